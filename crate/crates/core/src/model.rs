//! Core data model: isotherm points, validated isotherms, fit records,
//! analysis configuration and the report emitted by the pipeline.

use std::collections::BTreeMap;
use std::fmt;

/// One measured isotherm point: relative pressure and adsorbed amount.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    /// Relative pressure p/p0, strictly inside (0, 1) for valid data.
    pub p: f64,
    /// Adsorbed amount per gram, strictly positive for valid data.
    pub n: f64,
}

impl Point {
    pub fn new(p: f64, n: f64) -> Self {
        Point { p, n }
    }
}

/// A validated adsorption isotherm.
///
/// Construction goes through [`validate_isotherm`], so every instance holds
/// at least two points, strictly increasing pressures in (0, 1), strictly
/// positive uptakes, and no non-finite values. Downstream code relies on
/// these invariants without rechecking them.
#[derive(Debug, Clone, PartialEq)]
pub struct Isotherm {
    points: Vec<Point>,
}

impl Isotherm {
    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: validation rejects isotherms with fewer than two points.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn pressures(&self) -> Vec<f64> {
        self.points.iter().map(|pt| pt.p).collect()
    }

    pub fn uptakes(&self) -> Vec<f64> {
        self.points.iter().map(|pt| pt.n).collect()
    }
}

/// First constraint violated by a candidate isotherm, with the index of the
/// offending point where one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationError {
    /// Fewer than two points.
    TooShort,
    /// NaN or infinite pressure or uptake at the given index.
    NonFinite(usize),
    /// Pressure at the given index is outside the open interval (0, 1).
    PressureOutOfRange(usize),
    /// Uptake at the given index is zero or negative.
    NonPositiveUptake(usize),
    /// Pressure at the given index does not exceed its predecessor.
    NonMonotonePressure(usize),
}

impl ValidationError {
    /// Index of the offending point, if the error is tied to one.
    pub fn index(&self) -> Option<usize> {
        match *self {
            ValidationError::TooShort => None,
            ValidationError::NonFinite(k)
            | ValidationError::PressureOutOfRange(k)
            | ValidationError::NonPositiveUptake(k)
            | ValidationError::NonMonotonePressure(k) => Some(k),
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ValidationError::TooShort => write!(f, "isotherm has fewer than two points"),
            ValidationError::NonFinite(k) => {
                write!(f, "point {k} has a non-finite pressure or uptake")
            }
            ValidationError::PressureOutOfRange(k) => {
                write!(f, "point {k} has pressure outside (0, 1)")
            }
            ValidationError::NonPositiveUptake(k) => {
                write!(f, "point {k} has non-positive uptake")
            }
            ValidationError::NonMonotonePressure(k) => {
                write!(f, "point {k} does not increase in pressure over point {}", k - 1)
            }
        }
    }
}

impl std::error::Error for ValidationError {}

/// Checks a point sequence and wraps it as an [`Isotherm`].
///
/// Points are scanned in order; the first violated constraint wins. Per
/// point the checks run finiteness, pressure range, uptake sign, then
/// monotonicity against the predecessor, so an error index always refers to
/// a point whose earlier constraints all hold. Repeated pressures are
/// rejected rather than merged.
pub fn validate_isotherm(points: Vec<Point>) -> Result<Isotherm, ValidationError> {
    if points.len() < 2 {
        return Err(ValidationError::TooShort);
    }
    for (k, pt) in points.iter().enumerate() {
        if !pt.p.is_finite() || !pt.n.is_finite() {
            return Err(ValidationError::NonFinite(k));
        }
        if pt.p <= 0.0 || pt.p >= 1.0 {
            return Err(ValidationError::PressureOutOfRange(k));
        }
        if pt.n <= 0.0 {
            return Err(ValidationError::NonPositiveUptake(k));
        }
        if k > 0 && pt.p <= points[k - 1].p {
            return Err(ValidationError::NonMonotonePressure(k));
        }
    }
    Ok(Isotherm { points })
}

/// Linearized BET fit over one window, with the derived parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct BETFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Monolayer capacity in the uptake units of the input isotherm.
    pub nm: f64,
    /// BET constant.
    pub c: f64,
    /// Inclusive (start, end) point indices into the parent isotherm.
    pub range: (usize, usize),
    pub n_points: usize,
}

/// A window that survived every admissibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub fit: BETFit,
    /// Copy of the isotherm slice the fit was computed on.
    pub window: Vec<Point>,
    /// Theoretical monolayer pressure 1/(sqrt(c) + 1).
    pub p_nm: f64,
    /// Pressure where the interpolated isotherm reaches uptake nm.
    pub p_read: f64,
    /// Percentage disagreement between p_read and p_nm.
    pub pc_error: f64,
}

/// Why a window was rejected. Variants mirror the fixed order in which
/// [`crate::criteria::check_window`] applies its checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RejectionReason {
    TooFewPoints,
    NonLinearizablePoint,
    ZeroVariance,
    LowRSquared,
    NotMonotoneN1mP,
    NotMonotoneLinearized,
    NonPositiveC,
    NonPositiveNm,
    MonolayerOutsideWindow,
    MonolayerReadFailed,
    ToleranceExceeded,
}

impl RejectionReason {
    pub const ALL: [RejectionReason; 11] = [
        RejectionReason::TooFewPoints,
        RejectionReason::NonLinearizablePoint,
        RejectionReason::ZeroVariance,
        RejectionReason::LowRSquared,
        RejectionReason::NotMonotoneN1mP,
        RejectionReason::NotMonotoneLinearized,
        RejectionReason::NonPositiveC,
        RejectionReason::NonPositiveNm,
        RejectionReason::MonolayerOutsideWindow,
        RejectionReason::MonolayerReadFailed,
        RejectionReason::ToleranceExceeded,
    ];

    /// Stable tag used in the JSON report and the candidate dump.
    pub fn tag(&self) -> &'static str {
        match self {
            RejectionReason::TooFewPoints => "TooFewPoints",
            RejectionReason::NonLinearizablePoint => "NonLinearizablePoint",
            RejectionReason::ZeroVariance => "ZeroVariance",
            RejectionReason::LowRSquared => "LowRSquared",
            RejectionReason::NotMonotoneN1mP => "NotMonotoneN1mP",
            RejectionReason::NotMonotoneLinearized => "NotMonotoneLinearized",
            RejectionReason::NonPositiveC => "NonPositiveC",
            RejectionReason::NonPositiveNm => "NonPositiveNm",
            RejectionReason::MonolayerOutsideWindow => "MonolayerOutsideWindow",
            RejectionReason::MonolayerReadFailed => "MonolayerReadFailed",
            RejectionReason::ToleranceExceeded => "ToleranceExceeded",
        }
    }

    pub fn from_tag(tag: &str) -> Option<RejectionReason> {
        RejectionReason::ALL.iter().copied().find(|r| r.tag() == tag)
    }
}

impl fmt::Display for RejectionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Analysis thresholds and unit conversions.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Minimum points per admissible window.
    pub min_points: usize,
    /// Minimum coefficient of determination of the linearized fit.
    pub min_r_squared: f64,
    /// Maximum percentage disagreement between p_read and p_nm.
    pub monolayer_tolerance_pct: f64,
    /// Adsorbate cross-sectional area in nm^2.
    pub cross_section_nm2: f64,
    /// Factor converting one input uptake unit to mol per gram.
    pub uptake_unit_scale: f64,
}

impl Default for Config {
    /// Defaults: 10-point windows, R^2 >= 0.995, 20 % monolayer tolerance,
    /// nitrogen cross section 0.162 nm^2, uptake in mmol per gram.
    fn default() -> Self {
        Config {
            min_points: 10,
            min_r_squared: 0.995,
            monolayer_tolerance_pct: 20.0,
            cross_section_nm2: 0.162,
            uptake_unit_scale: 1e-3,
        }
    }
}

/// A configuration field that violates its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigError {
    MinPointsTooSmall,
    MinRSquaredOutOfRange,
    NonPositiveTolerance,
    NonPositiveCrossSection,
    NonPositiveUnitScale,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            ConfigError::MinPointsTooSmall => "min_points must be at least 2",
            ConfigError::MinRSquaredOutOfRange => "min_r_squared must lie in (0, 1]",
            ConfigError::NonPositiveTolerance => "monolayer_tolerance_pct must be positive",
            ConfigError::NonPositiveCrossSection => "cross_section_nm2 must be positive",
            ConfigError::NonPositiveUnitScale => "uptake_unit_scale must be positive",
        };
        f.write_str(msg)
    }
}

impl std::error::Error for ConfigError {}

impl Config {
    /// Checks every field bound. The analysis functions assume a valid
    /// configuration; front ends should call this before running them.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.min_points < 2 {
            return Err(ConfigError::MinPointsTooSmall);
        }
        if !(self.min_r_squared > 0.0 && self.min_r_squared <= 1.0) {
            return Err(ConfigError::MinRSquaredOutOfRange);
        }
        if self.monolayer_tolerance_pct <= 0.0 || self.monolayer_tolerance_pct.is_nan() {
            return Err(ConfigError::NonPositiveTolerance);
        }
        if self.cross_section_nm2 <= 0.0 || self.cross_section_nm2.is_nan() {
            return Err(ConfigError::NonPositiveCrossSection);
        }
        if self.uptake_unit_scale <= 0.0 || self.uptake_unit_scale.is_nan() {
            return Err(ConfigError::NonPositiveUnitScale);
        }
        Ok(())
    }
}

/// Full outcome of analyzing one isotherm.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    /// Uniquely selected candidate, absent when no window is admissible.
    pub chosen: Option<Candidate>,
    /// All admissible windows, sorted by (end, start) ascending.
    pub candidates: Vec<Candidate>,
    /// Number of rejected windows per reason; zero counts are omitted.
    pub rejections: BTreeMap<RejectionReason, usize>,
    /// Specific surface area in m^2 per gram, derived from the chosen fit.
    pub surface_area_m2_per_g: Option<f64>,
    /// Hex SHA-256 over the ingested point values.
    pub input_digest: String,
}
