//! Ordinary least squares for the linearized BET fit.
//!
//! The implementation is deliberately plain: centered sums accumulated left
//! to right, an exact zero test on the x-variance, and R^2 defined as 1
//! when the total sum of squares is exactly zero (a horizontal fit of
//! constant data is perfect). Keeping the arithmetic order fixed makes
//! results bit-reproducible across runs and thread counts.

/// Fitted line y = slope * x + intercept with its coefficient of
/// determination. All fields are finite for finite input data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares line through `data`, or `None` when no unique line exists:
/// fewer than two points, or x-variance exactly zero.
pub fn linear_regression(data: &[(f64, f64)]) -> Option<RegressionResult> {
    if data.len() < 2 {
        return None;
    }
    let n = data.len() as f64;
    let mean_x = data.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = data.iter().map(|&(_, y)| y).sum::<f64>() / n;

    let mut cov = 0.0;
    let mut var_x = 0.0;
    for &(x, y) in data {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
    }
    if var_x == 0.0 {
        return None;
    }

    let slope = cov / var_x;
    let intercept = mean_y - slope * mean_x;

    let mut ss_tot = 0.0;
    let mut ss_res = 0.0;
    for &(x, y) in data {
        let fitted = slope * x + intercept;
        ss_tot += (y - mean_y) * (y - mean_y);
        ss_res += (y - fitted) * (y - fitted);
    }
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };

    Some(RegressionResult { slope, intercept, r_squared })
}

/// Sum of squared residuals of `data` against the line (slope, intercept).
pub fn ss_res(data: &[(f64, f64)], slope: f64, intercept: f64) -> f64 {
    let mut acc = 0.0;
    for &(x, y) in data {
        let r = y - (slope * x + intercept);
        acc += r * r;
    }
    acc
}
