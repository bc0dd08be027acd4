//! BET theory: the forward uptake equation, its linearization, parameter
//! extraction, and the finite layer model the equation is the limit of.
//!
//! The forward model for monolayer capacity `nm` and BET constant `c` is
//!
//! ```text
//! n(p) = c * nm * p / ((1 - p) * (1 + (c - 1) * p))
//! ```
//!
//! and the linearized form y = p / (n (1 - p)) is affine in p with
//! intercept b = 1 / (c nm) and slope m = (c - 1) / (c nm). The layer model
//! tracks surface populations s_i covered by i layers: s_i = c x^i s_0 for
//! i >= 1 with s_0 normalized to 1, and its occupancy ratio converges to
//! c x / ((1 - x) (1 - x + c x)) for 0 < x < 1.

use crate::model::Point;
use std::fmt;

/// Failure modes of the closed-form BET operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetError {
    /// An argument left the domain the formula is defined on.
    Domain(&'static str),
    /// Regression coefficients admit no finite positive parameters
    /// (intercept zero, or slope and intercept cancel).
    DegenerateFit,
    /// Point at the given index has p(1 - p) * n = 0, so y is undefined.
    NonLinearizablePoint(usize),
}

impl fmt::Display for BetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BetError::Domain(what) => write!(f, "argument out of domain: {what}"),
            BetError::DegenerateFit => {
                write!(f, "regression coefficients admit no BET parameters")
            }
            BetError::NonLinearizablePoint(k) => {
                write!(f, "point {k} cannot be linearized")
            }
        }
    }
}

impl std::error::Error for BetError {}

/// Forward BET uptake at relative pressure `p`.
///
/// Expects nm > 0 and c > 0 for physical meaning; only the pressure domain
/// is enforced so algebraic identities can be probed across sign changes.
pub fn bet_uptake(p: f64, nm: f64, c: f64) -> Result<f64, BetError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(BetError::Domain("p must lie in (0, 1)"));
    }
    Ok(c * nm * p / ((1.0 - p) * (1.0 + (c - 1.0) * p)))
}

/// Linearized ordinate (p, y) with y = p / (n (1 - p)), or `None` when the
/// denominator vanishes.
pub fn linearize_point(pt: Point) -> Option<(f64, f64)> {
    let denom = pt.n * (1.0 - pt.p);
    if denom == 0.0 {
        return None;
    }
    Some((pt.p, pt.p / denom))
}

/// Linearizes every point of a window, failing on the first point whose
/// denominator vanishes. An empty window linearizes to an empty sequence.
pub fn linearize_window(window: &[Point]) -> Result<Vec<(f64, f64)>, BetError> {
    window
        .iter()
        .enumerate()
        .map(|(k, &pt)| linearize_point(pt).ok_or(BetError::NonLinearizablePoint(k)))
        .collect()
}

/// Recovers (nm, c) from the linearized slope m and intercept b:
/// nm = 1 / (b + m), c = 1 + m / b.
pub fn extract_params(m: f64, b: f64) -> Result<(f64, f64), BetError> {
    if b == 0.0 || b + m == 0.0 {
        return Err(BetError::DegenerateFit);
    }
    Ok((1.0 / (b + m), 1.0 + m / b))
}

/// Pressure at which the BET equation predicts exactly monolayer coverage:
/// 1 / (sqrt(c) + 1).
pub fn monolayer_pressure(c: f64) -> Result<f64, BetError> {
    if c <= 0.0 || c.is_nan() {
        return Err(BetError::Domain("c must be positive"));
    }
    Ok(1.0 / (c.sqrt() + 1.0))
}

/// Parameters of the finite layer model: first-layer affinity ratio `c`
/// and layering ratio `x`, the latter restricted to (0, 1) so the infinite
/// series converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerModelParams {
    c: f64,
    x: f64,
}

impl LayerModelParams {
    pub fn new(c: f64, x: f64) -> Result<Self, BetError> {
        if c <= 0.0 || c.is_nan() {
            return Err(BetError::Domain("c must be positive"));
        }
        if !(x > 0.0 && x < 1.0) {
            return Err(BetError::Domain("x must lie in (0, 1)"));
        }
        Ok(LayerModelParams { c, x })
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Limit occupancy ratio of the layer model:
/// c x / ((1 - x) (1 - x + c x)).
pub fn layer_ratio_closed(params: &LayerModelParams) -> f64 {
    let (c, x) = (params.c, params.x);
    c * x / ((1.0 - x) * (1.0 - x + c * x))
}

/// Occupancy ratio of the layer model truncated after `terms` layers:
///
/// ```text
/// sum_{i=1..terms} i c x^i  /  (1 + sum_{i=1..terms} c x^i)
/// ```
///
/// The bare 1 in the denominator is the uncovered surface s_0. Summation
/// runs left to right in layer order so results are bit-reproducible.
pub fn layer_ratio_series(params: &LayerModelParams, terms: u32) -> f64 {
    assert!(terms >= 1, "series needs at least one term");
    let (c, x) = (params.c, params.x);
    let mut covered = 0.0;
    let mut weighted = 0.0;
    let mut x_pow = 1.0;
    for i in 1..=terms {
        x_pow *= x;
        covered += c * x_pow;
        weighted += f64::from(i) * c * x_pow;
    }
    weighted / (1.0 + covered)
}
