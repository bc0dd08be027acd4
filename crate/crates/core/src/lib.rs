//! BET surface-area analysis over adsorption isotherms.
//!
//! The pipeline ingests a pressure/uptake isotherm, fits the linearized
//! BET model on every contiguous point window, filters windows through the
//! Rouquerol consistency checks plus a monolayer cross-check against a
//! shape-preserving interpolation of the measured curve, and selects one
//! result by the knee rule: the longest admissible reach into high
//! pressure, tie-broken by monolayer agreement. The chosen monolayer
//! capacity converts to a specific surface area via the adsorbate cross
//! section.
//!
//! Entry points: [`io::parse_isotherm_csv`] or [`model::validate_isotherm`]
//! to obtain an [`model::Isotherm`], then [`pipeline::analyze`] for an
//! [`model::AnalysisReport`], and [`io::write_report_json`] to serialize it
//! deterministically.

pub mod bet;
pub mod criteria;
pub mod io;
pub mod model;
pub mod pchip;
pub mod pipeline;
pub mod regression;
pub mod selection;
pub mod windows;

pub use model::{AnalysisReport, BETFit, Candidate, Config, Isotherm, Point, RejectionReason};
pub use pipeline::{analyze, analyze_serial, surface_area};
