//! Window admissibility: the Rouquerol consistency checks plus the
//! monolayer cross-check, applied in one fixed order so every rejected
//! window reports the first reason that disqualified it.

use crate::bet::{extract_params, linearize_window, monolayer_pressure, BetError};
use crate::model::{Candidate, Config, Isotherm, RejectionReason, BETFit};
use crate::pchip::PchipInterpolant;
use crate::regression::linear_regression;
use crate::windows::Window;

/// Result of checking one window.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckOutcome {
    Accepted(Candidate),
    Rejected(RejectionReason),
}

impl CheckOutcome {
    pub fn candidate(&self) -> Option<&Candidate> {
        match self {
            CheckOutcome::Accepted(c) => Some(c),
            CheckOutcome::Rejected(_) => None,
        }
    }
}

/// True when the sequence never decreases. Vacuously true below two
/// elements; false on NaN, which never compares.
pub fn is_nondecreasing(seq: &[f64]) -> bool {
    seq.windows(2).all(|w| w[0] <= w[1])
}

/// Percentage disagreement of a read-off pressure against the theoretical
/// monolayer pressure: 100 |p_nm - p_read| / p_nm.
pub fn pc_error(p_nm: f64, p_read: f64) -> Result<f64, BetError> {
    if p_nm <= 0.0 || p_nm.is_nan() {
        return Err(BetError::Domain("p_nm must be positive"));
    }
    Ok(100.0 * (p_nm - p_read).abs() / p_nm)
}

/// Pressure tested for window membership in the monolayer location check.
/// The read-off pressure is the committed interpretation; swapping this to
/// `p_nm` is the one-line change that yields the alternative reading.
#[inline]
fn membership_pressure(p_nm: f64, p_read: f64) -> f64 {
    let _ = p_nm;
    p_read
}

/// Applies the admissibility checks to one window, in this order:
///
///  1. window holds at least `min_points` points;
///  2. every point linearizes;
///  3. n (1 - p) is nondecreasing over the window;
///  4. the linearized ordinates are nondecreasing;
///  5. the regression exists (positive abscissa variance);
///  6. R^2 reaches `min_r_squared`;
///  7. the extracted parameters satisfy c > 0 and nm > 0;
///  8. the interpolated isotherm reaches uptake nm somewhere;
///  9. that pressure lies inside the window, bounds inclusive;
/// 10. its disagreement with 1/(sqrt(c) + 1) is within tolerance.
///
/// The first failed check decides the rejection reason. `interp` must be
/// built over the full parent isotherm: the monolayer read-off deliberately
/// consults the whole measured curve, not just the window.
pub fn check_window(
    iso: &Isotherm,
    w: &Window,
    interp: &PchipInterpolant,
    cfg: &Config,
) -> CheckOutcome {
    let window = w.slice(iso);

    if window.len() < cfg.min_points {
        return CheckOutcome::Rejected(RejectionReason::TooFewPoints);
    }

    let linearized = match linearize_window(window) {
        Ok(seq) => seq,
        Err(_) => return CheckOutcome::Rejected(RejectionReason::NonLinearizablePoint),
    };

    let n1mp: Vec<f64> = window.iter().map(|pt| pt.n * (1.0 - pt.p)).collect();
    if !is_nondecreasing(&n1mp) {
        return CheckOutcome::Rejected(RejectionReason::NotMonotoneN1mP);
    }

    let ordinates: Vec<f64> = linearized.iter().map(|&(_, y)| y).collect();
    if !is_nondecreasing(&ordinates) {
        return CheckOutcome::Rejected(RejectionReason::NotMonotoneLinearized);
    }

    let fit = match linear_regression(&linearized) {
        Some(fit) => fit,
        None => return CheckOutcome::Rejected(RejectionReason::ZeroVariance),
    };

    if fit.r_squared < cfg.min_r_squared {
        return CheckOutcome::Rejected(RejectionReason::LowRSquared);
    }

    let (nm, c) = match extract_params(fit.slope, fit.intercept) {
        // A degenerate extraction means c is zero or undefined.
        Err(_) => return CheckOutcome::Rejected(RejectionReason::NonPositiveC),
        Ok(pair) => pair,
    };
    if c <= 0.0 {
        return CheckOutcome::Rejected(RejectionReason::NonPositiveC);
    }
    if nm <= 0.0 {
        return CheckOutcome::Rejected(RejectionReason::NonPositiveNm);
    }

    let p_nm = monolayer_pressure(c).expect("c > 0 was just checked");

    let p_read = match interp.invert_uptake(nm) {
        Some(p) => p,
        None => return CheckOutcome::Rejected(RejectionReason::MonolayerReadFailed),
    };

    let p_start = window[0].p;
    let p_end = window[window.len() - 1].p;
    let p_member = membership_pressure(p_nm, p_read);
    if !(p_member >= p_start && p_member <= p_end) {
        return CheckOutcome::Rejected(RejectionReason::MonolayerOutsideWindow);
    }

    let err = pc_error(p_nm, p_read).expect("p_nm is positive for c > 0");
    if err > cfg.monolayer_tolerance_pct {
        return CheckOutcome::Rejected(RejectionReason::ToleranceExceeded);
    }

    CheckOutcome::Accepted(Candidate {
        fit: BETFit {
            slope: fit.slope,
            intercept: fit.intercept,
            r_squared: fit.r_squared,
            nm,
            c,
            range: (w.start, w.end),
            n_points: window.len(),
        },
        window: window.to_vec(),
        p_nm,
        p_read,
        pc_error: err,
    })
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

    fn loose_cfg() -> Config {
        Config { min_points: 2, ..Config::default() }
    }

    #[test]
    fn nondecreasing_predicate() {
        assert!(is_nondecreasing(&[]));
        assert!(is_nondecreasing(&[1.0]));
        assert!(is_nondecreasing(&[1.0, 1.0, 2.0]));
        assert!(!is_nondecreasing(&[1.0, 0.5]));
        assert!(!is_nondecreasing(&[1.0, f64::NAN, 2.0]));
    }

    #[test]
    fn pc_error_examples() {
        assert_relative_eq!(pc_error(0.2, 0.25).unwrap(), 25.0, max_relative = 1e-12);
        assert_relative_eq!(pc_error(0.2, 0.16).unwrap(), 20.0, max_relative = 1e-12);
        assert_eq!(pc_error(0.2, 0.2).unwrap(), 0.0);
        assert!(matches!(pc_error(0.0, 0.1), Err(BetError::Domain(_))));
        assert!(matches!(pc_error(-0.2, 0.1), Err(BetError::Domain(_))));
    }

    #[test]
    fn exact_bet_window_is_accepted_with_recovered_parameters() {
        let iso = bet_isotherm(1.0, 100.0, 0.01, 0.30, 20);
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 19 };
        match check_window(&iso, &w, &interp, &Config::default()) {
            CheckOutcome::Accepted(cand) => {
                assert!((cand.fit.nm - 1.0).abs() <= 1e-6);
                assert!((cand.fit.c - 100.0).abs() <= 1e-3);
                assert!(cand.fit.r_squared >= 1.0 - 1e-10);
                assert_eq!(cand.fit.range, (0, 19));
                assert_eq!(cand.fit.n_points, 20);
                assert_eq!(cand.window.as_slice(), w.slice(&iso));
                assert!(cand.pc_error <= 1.0);
            }
            CheckOutcome::Rejected(r) => panic!("expected acceptance, got {r}"),
        }
    }

    #[test]
    fn short_window_rejected_first() {
        let iso = bet_isotherm(1.0, 100.0, 0.01, 0.30, 8);
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 7 };
        assert_eq!(
            check_window(&iso, &w, &interp, &Config::default()),
            CheckOutcome::Rejected(RejectionReason::TooFewPoints)
        );
    }

    #[test]
    fn decreasing_n1mp_rejected() {
        // Uptake falls fast enough that n (1 - p) decreases.
        let iso = validate_isotherm(vec![
            Point::new(0.10, 2.00),
            Point::new(0.20, 1.50),
            Point::new(0.30, 1.20),
        ])
        .unwrap();
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 2 };
        assert_eq!(
            check_window(&iso, &w, &interp, &loose_cfg()),
            CheckOutcome::Rejected(RejectionReason::NotMonotoneN1mP)
        );
    }

    #[test]
    fn decreasing_linearized_rejected_after_n1mp_passes() {
        // n (1 - p) rises 0.1 -> 0.4 but y = p / (n (1 - p)) falls 1 -> 0.5.
        let iso = validate_isotherm(vec![
            Point::new(0.1, 0.1 / 0.9),
            Point::new(0.2, 0.4 / 0.8),
        ])
        .unwrap();
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 1 };
        assert_eq!(
            check_window(&iso, &w, &interp, &loose_cfg()),
            CheckOutcome::Rejected(RejectionReason::NotMonotoneLinearized)
        );
    }

    #[test]
    fn poor_linearity_rejected() {
        // Monotone both ways yet far from affine: hand regression of
        // y = (1, 2, 2.01, 2.02) on p = (0.1, 0.25, 0.3, 0.4) gives
        // R^2 near 0.76. Both monotone sequences carry wide margins so
        // rounding in the round trip through n cannot flip them.
        let ps = [0.1, 0.25, 0.3, 0.4];
        let ys = [1.0, 2.0, 2.01, 2.02];
        let points: Vec<Point> = ps
            .iter()
            .zip(&ys)
            .map(|(&p, &y)| Point::new(p, p / (y * (1.0 - p))))
            .collect();
        let iso = validate_isotherm(points).unwrap();
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 3 };
        assert_eq!(
            check_window(&iso, &w, &interp, &loose_cfg()),
            CheckOutcome::Rejected(RejectionReason::LowRSquared)
        );
    }

    #[test]
    fn unreachable_monolayer_uptake_rejected() {
        // Sampling only far below the knee keeps every measured uptake
        // under nm = 1, so the read-off target is never reached.
        let iso = bet_isotherm(1.0, 100.0, 0.001, 0.01, 12);
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 11 };
        assert_eq!(
            check_window(&iso, &w, &interp, &Config::default()),
            CheckOutcome::Rejected(RejectionReason::MonolayerReadFailed)
        );
    }

    #[test]
    fn monolayer_outside_tail_window_rejected() {
        // The full isotherm covers the monolayer pressure near 0.09, but a
        // window confined to the tail does not contain it.
        let iso = bet_isotherm(1.0, 100.0, 0.01, 0.30, 30);
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 18, end: 29 };
        assert_eq!(
            check_window(&iso, &w, &interp, &Config::default()),
            CheckOutcome::Rejected(RejectionReason::MonolayerOutsideWindow)
        );
    }

    #[test]
    fn tolerance_exceeded_when_threshold_is_pinched() {
        // Exact model data passes with the default 20 % tolerance; an
        // absurdly tight tolerance turns the interpolation error into the
        // only failing check.
        let iso = bet_isotherm(1.0, 100.0, 0.01, 0.30, 20);
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 19 };
        let cfg = Config { monolayer_tolerance_pct: 1e-12, ..Config::default() };
        assert_eq!(
            check_window(&iso, &w, &interp, &cfg),
            CheckOutcome::Rejected(RejectionReason::ToleranceExceeded)
        );
    }

    #[test]
    fn rejection_depends_only_on_the_first_failed_check() {
        // Short and non-monotone: the length check fires first.
        let iso = validate_isotherm(vec![
            Point::new(0.10, 2.00),
            Point::new(0.20, 1.50),
        ])
        .unwrap();
        let interp = PchipInterpolant::from_isotherm(&iso);
        let w = Window { start: 0, end: 1 };
        assert_eq!(
            check_window(&iso, &w, &interp, &Config::default()),
            CheckOutcome::Rejected(RejectionReason::TooFewPoints)
        );
    }
}
