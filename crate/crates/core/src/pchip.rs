//! Shape-preserving piecewise cubic Hermite interpolation (PCHIP) and its
//! inversion, used to read the pressure at which the measured isotherm
//! reaches a given uptake.
//!
//! Node derivatives follow Fritsch and Carlson: weighted harmonic means of
//! adjacent secant slopes in the interior, zeroed at local extrema, and a
//! limited three-point formula at the ends. Every derivative lands in the
//! region that keeps each cubic piece monotone between its two nodes, so
//! the interpolant never overshoots locally monotone data.

use crate::model::Isotherm;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PchipError {
    /// Fewer than two nodes.
    TooShort,
    /// Evaluation point outside [first knot, last knot].
    OutOfDomain,
}

impl fmt::Display for PchipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PchipError::TooShort => write!(f, "interpolation needs at least two nodes"),
            PchipError::OutOfDomain => write!(f, "evaluation point outside the knot range"),
        }
    }
}

impl std::error::Error for PchipError {}

/// Monotone cubic Hermite interpolant over a fixed knot grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PchipInterpolant {
    knots: Vec<f64>,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl PchipInterpolant {
    /// Builds the interpolant. Knots must be finite and strictly
    /// increasing and values finite; both are enforced by assertion since
    /// isotherm validation guarantees them upstream.
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self, PchipError> {
        if knots.len() < 2 {
            return Err(PchipError::TooShort);
        }
        assert_eq!(knots.len(), values.len(), "one value per knot");
        assert!(
            knots.windows(2).all(|w| w[0] < w[1]),
            "knots must be strictly increasing"
        );
        assert!(
            knots.iter().chain(values.iter()).all(|v| v.is_finite()),
            "knots and values must be finite"
        );
        let derivs = node_derivatives(&knots, &values);
        Ok(PchipInterpolant { knots, values, derivs })
    }

    /// Interpolant through a validated isotherm, pressure to uptake.
    pub fn from_isotherm(iso: &Isotherm) -> Self {
        PchipInterpolant::new(iso.pressures(), iso.uptakes())
            .expect("validated isotherms have at least two points")
    }

    #[inline]
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Domain of definition, inclusive on both ends.
    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    /// Evaluates the interpolant. Exact knot hits return the stored node
    /// value bit for bit.
    pub fn eval(&self, p: f64) -> Result<f64, PchipError> {
        let last = self.knots.len() - 1;
        if !(p >= self.knots[0] && p <= self.knots[last]) {
            return Err(PchipError::OutOfDomain);
        }
        let idx = match self
            .knots
            .binary_search_by(|k| k.partial_cmp(&p).expect("finite knots"))
        {
            Ok(i) => return Ok(self.values[i]),
            // p lies strictly between knots[i - 1] and knots[i].
            Err(i) => i - 1,
        };
        Ok(self.eval_on(idx, p))
    }

    /// Hermite cubic on interval `idx`, with p strictly inside it.
    fn eval_on(&self, idx: usize, p: f64) -> f64 {
        let h = self.knots[idx + 1] - self.knots[idx];
        let t = (p - self.knots[idx]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.values[idx]
            + h10 * h * self.derivs[idx]
            + h01 * self.values[idx + 1]
            + h11 * h * self.derivs[idx + 1]
    }

    /// Smallest pressure in the domain at which the interpolant reaches
    /// `target`, or `None` when the target lies outside the range of node
    /// values. The crossing is located by an interval scan followed by
    /// bisection, which converges because each cubic piece is monotone.
    pub fn invert_uptake(&self, target: f64) -> Option<f64> {
        if !target.is_finite() {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if target < lo || target > hi {
            return None;
        }
        for k in 0..self.knots.len() - 1 {
            let a = self.values[k];
            let b = self.values[k + 1];
            if a == target {
                return Some(self.knots[k]);
            }
            if target < a.min(b) || target > a.max(b) {
                continue;
            }
            if b == target {
                // Monotone piece: the first touch of the target is the node.
                return Some(self.knots[k + 1]);
            }
            return Some(self.bisect(k, target));
        }
        // Unreachable: target within the node value range is always
        // bracketed by some adjacent pair.
        None
    }

    /// Bisection for the unique crossing inside interval `k`, where the
    /// target is strictly bracketed by the interval's node values. Runs
    /// until the bracket cannot shrink at f64 resolution, capped at 200
    /// steps, which lands within 1e-12 of the crossing with room to spare.
    fn bisect(&self, k: usize, target: f64) -> f64 {
        let mut lo = self.knots[k];
        let mut hi = self.knots[k + 1];
        let increasing = self.values[k] < self.values[k + 1];
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = self.eval_on(k, mid);
            if v == target {
                return mid;
            }
            let below = if increasing { v < target } else { v > target };
            if below {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Fritsch-Carlson node derivatives.
fn node_derivatives(knots: &[f64], values: &[f64]) -> Vec<f64> {
    let n = knots.len();
    if n == 2 {
        let secant = (values[1] - values[0]) / (knots[1] - knots[0]);
        return vec![secant, secant];
    }
    let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (values[k + 1] - values[k]) / h[k]).collect();

    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        let s1 = delta[k - 1];
        let s2 = delta[k];
        // Zero at local extrema and plateaus; harmonic mean keeps the
        // derivative within three times either neighboring secant.
        if s1 == 0.0 || s2 == 0.0 || (s1 > 0.0) != (s2 > 0.0) {
            d[k] = 0.0;
        } else {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / s1 + w2 / s2);
        }
    }
    d[0] = edge_derivative(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = edge_derivative(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

/// Non-centered three-point estimate at a boundary node, limited so the
/// outermost cubic piece stays shape-preserving.
fn edge_derivative(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d.signum() != del0.signum() {
        0.0
    } else if del0.signum() != del1.signum() && d.abs() > 3.0 * del0.abs() {
        3.0 * del0
    } else {
        d
    }
}
