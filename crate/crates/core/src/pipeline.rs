//! End-to-end analysis: enumerate windows, check each, select the knee
//! candidate, and convert its monolayer capacity to a surface area.

use crate::criteria::{check_window, CheckOutcome};
use crate::model::{AnalysisReport, Candidate, Config, Isotherm, RejectionReason};
use crate::pchip::PchipInterpolant;
use crate::selection::select_knee;
use crate::windows::enumerate_windows;
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// Avogadro constant in 1/mol (exact by definition).
pub const AVOGADRO: f64 = 6.022_140_76e23;

/// Specific surface area in m^2 per gram for a monolayer capacity `nm`
/// given in input uptake units per gram:
///
/// ```text
/// area = nm * uptake_unit_scale * N_A * cross_section_nm2 * 1e-18
/// ```
///
/// where the scale converts to mol per gram and 1e-18 converts nm^2 to m^2.
pub fn surface_area(nm: f64, cfg: &Config) -> Result<f64, crate::bet::BetError> {
    if nm < 0.0 {
        return Err(crate::bet::BetError::Domain("nm must be non-negative"));
    }
    Ok(nm * cfg.uptake_unit_scale * AVOGADRO * cfg.cross_section_nm2 * 1e-18)
}

/// Hex SHA-256 over the raw bit patterns of the isotherm's points, in
/// order. Identifies the ingested data independently of its source file.
pub fn input_digest(iso: &Isotherm) -> String {
    let mut hasher = Sha256::new();
    for pt in iso.points() {
        hasher.update(pt.p.to_bits().to_be_bytes());
        hasher.update(pt.n.to_bits().to_be_bytes());
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write;
        write!(out, "{byte:02x}").expect("writing to a String cannot fail");
    }
    out
}

/// Full analysis with window checks fanned out across the rayon pool.
/// Outcomes are collected back in window order, so the report is byte for
/// byte identical to [`analyze_serial`] regardless of thread count.
pub fn analyze(iso: &Isotherm, cfg: &Config) -> AnalysisReport {
    let interp = PchipInterpolant::from_isotherm(iso);
    let windows = enumerate_windows(iso);
    let outcomes: Vec<CheckOutcome> = windows
        .par_iter()
        .map(|w| check_window(iso, w, &interp, cfg))
        .collect();
    assemble(outcomes, iso, cfg)
}

/// Same analysis on the calling thread only.
pub fn analyze_serial(iso: &Isotherm, cfg: &Config) -> AnalysisReport {
    let interp = PchipInterpolant::from_isotherm(iso);
    let windows = enumerate_windows(iso);
    let outcomes: Vec<CheckOutcome> = windows
        .iter()
        .map(|w| check_window(iso, w, &interp, cfg))
        .collect();
    assemble(outcomes, iso, cfg)
}

fn assemble(outcomes: Vec<CheckOutcome>, iso: &Isotherm, cfg: &Config) -> AnalysisReport {
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut rejections: BTreeMap<RejectionReason, usize> = BTreeMap::new();
    for outcome in outcomes {
        match outcome {
            CheckOutcome::Accepted(c) => candidates.push(c),
            CheckOutcome::Rejected(reason) => *rejections.entry(reason).or_insert(0) += 1,
        }
    }
    candidates.sort_by_key(|c| (c.fit.range.1, c.fit.range.0));

    let chosen = select_knee(&candidates).cloned();
    let surface_area_m2_per_g = chosen
        .as_ref()
        .map(|c| surface_area(c.fit.nm, cfg).expect("candidate nm is positive"));

    AnalysisReport {
        chosen,
        candidates,
        rejections,
        surface_area_m2_per_g,
        input_digest: input_digest(iso),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bet::bet_uptake;
    use crate::model::{validate_isotherm, Point};
    use approx::assert_relative_eq;

    fn bet_isotherm(nm: f64, c: f64, p_lo: f64, p_hi: f64, n: usize) -> Isotherm {
        let points = (0..n)
            .map(|k| {
                let p = p_lo + (p_hi - p_lo) * k as f64 / (n - 1) as f64;
                Point::new(p, bet_uptake(p, nm, c).unwrap())
            })
            .collect();
        validate_isotherm(points).unwrap()
    }

    #[test]
    fn one_mmol_monolayer_gives_the_nitrogen_reference_area() {
        // 1 mmol/g at 0.162 nm^2 per molecule: 97.5587 m^2/g.
        let area = surface_area(1.0, &Config::default()).unwrap();
        assert!((area - 97.5587).abs() <= 1e-3);
    }

    #[test]
    fn surface_area_scales_linearly_and_rejects_negative_nm() {
        let cfg = Config::default();
        let one = surface_area(1.0, &cfg).unwrap();
        assert_relative_eq!(surface_area(2.5, &cfg).unwrap(), 2.5 * one, max_relative = 1e-12);
        assert_eq!(surface_area(0.0, &cfg).unwrap(), 0.0);
        assert!(surface_area(-1.0, &cfg).is_err());
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = bet_isotherm(1.0, 100.0, 0.01, 0.30, 12);
        let b = bet_isotherm(1.0, 100.0, 0.01, 0.30, 12);
        let c = bet_isotherm(1.0, 101.0, 0.01, 0.30, 12);
        assert_eq!(input_digest(&a), input_digest(&b));
        assert_ne!(input_digest(&a), input_digest(&c));
        assert_eq!(input_digest(&a).len(), 64);
        assert!(input_digest(&a).chars().all(|ch| ch.is_ascii_hexdigit()));
    }

    #[test]
    fn exact_model_data_recovers_parameters_end_to_end() {
        let iso = bet_isotherm(1.0, 100.0, 0.01, 0.30, 20);
        let report = analyze(&iso, &Config::default());
        let chosen = report.chosen.as_ref().expect("exact data yields a result");
        assert!((chosen.fit.nm - 1.0).abs() <= 1e-6);
        assert!(chosen.fit.r_squared >= 1.0 - 1e-10);
        assert!(report.surface_area_m2_per_g.is_some());
    }

    #[test]
    fn outcome_counts_cover_every_window() {
        let iso = bet_isotherm(1.0, 100.0, 0.01, 0.30, 15);
        let report = analyze(&iso, &Config::default());
        let rejected: usize = report.rejections.values().sum();
        assert_eq!(report.candidates.len() + rejected, 15 * 14 / 2);
        assert!(report.rejections.values().all(|&n| n > 0));
    }

    #[test]
    fn chosen_is_one_of_the_candidates() {
        let iso = bet_isotherm(0.8, 250.0, 0.01, 0.35, 18);
        let report = analyze(&iso, &Config::default());
        let chosen = report.chosen.as_ref().unwrap();
        assert!(report.candidates.contains(chosen));
    }

    #[test]
    fn candidates_are_sorted_by_end_then_start() {
        let iso = bet_isotherm(1.0, 100.0, 0.01, 0.30, 16);
        let report = analyze(&iso, &Config::default());
        for pair in report.candidates.windows(2) {
            let a = (pair[0].fit.range.1, pair[0].fit.range.0);
            let b = (pair[1].fit.range.1, pair[1].fit.range.0);
            assert!(a < b);
        }
    }

    #[test]
    fn no_admissible_window_leaves_chosen_empty() {
        // Two points cannot satisfy the default ten-point minimum.
        let iso = validate_isotherm(vec![Point::new(0.1, 1.0), Point::new(0.2, 2.0)]).unwrap();
        let report = analyze(&iso, &Config::default());
        assert_eq!(report.chosen, None);
        assert_eq!(report.surface_area_m2_per_g, None);
        assert!(report.candidates.is_empty());
        assert_eq!(report.rejections.get(&RejectionReason::TooFewPoints), Some(&1));
    }

    #[test]
    fn parallel_and_serial_reports_are_identical() {
        let iso = bet_isotherm(1.2, 80.0, 0.02, 0.32, 17);
        let cfg = Config::default();
        assert_eq!(analyze(&iso, &cfg), analyze_serial(&iso, &cfg));
    }
}
