//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Newton's method kept inside a sign-change bracket.
///
/// Any Newton step that leaves the current bracket, or fails to halve the
/// previous step, is replaced by bisection. `f` returns the value and the
/// derivative.
pub fn safeguarded_newton<F>(mut f: F, lo: f64, hi: f64, start: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let (f_lo, _) = f(lo)?;
    let (f_hi, _) = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracketing(format!(
            "no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})"
        )));
    }
    // Orient so that f(neg) < 0 < f(pos).
    let (mut neg, mut pos) = if f_lo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = if start > lo.min(hi) && start < lo.max(hi) {
        start
    } else {
        0.5 * (lo + hi)
    };
    let mut step_old = (hi - lo).abs();
    let mut step = step_old;
    let (mut fx, mut dfx) = f(x)?;
    for _ in 0..200 {
        if fx == 0.0 {
            return Ok(x);
        }
        let newton_leaves = ((x - pos) * dfx - fx) * ((x - neg) * dfx - fx) > 0.0;
        if newton_leaves || (2.0 * fx).abs() > (step_old * dfx).abs() {
            step_old = step;
            step = 0.5 * (pos - neg);
            x = neg + step;
        } else {
            step_old = step;
            step = fx / dfx;
            x -= step;
        }
        let tol = xtol * x.abs().max(1.0e-300);
        if step.abs() <= tol || (pos - neg).abs() <= tol {
            return Ok(x);
        }
        (fx, dfx) = f(x)?;
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
    }
    Err(Error::Bracketing(format!(
        "safeguarded Newton did not converge on [{lo}, {hi}]"
    )))
}

/// Number of strict sign changes of `f` over `samples + 1` equispaced points.
pub fn count_sign_changes<F>(mut f: F, lo: f64, hi: f64, samples: usize) -> Result<usize>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut changes = 0;
    let mut prev = f(lo)?;
    for i in 1..=samples {
        let x = lo + (hi - lo) * i as f64 / samples as f64;
        let cur = f(x)?;
        if prev != 0.0 && cur != 0.0 && prev.signum() != cur.signum() {
            changes += 1;
        }
        if cur != 0.0 {
            prev = cur;
        }
    }
    Ok(changes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_root() {
        let r = safeguarded_newton(|x| Ok((x * x * x - 2.0, 3.0 * x * x)), 0.0, 2.0, 1.9, 1e-15)
            .unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn survives_flat_derivative() {
        // Newton from x = 0 would divide by zero.
        let r = safeguarded_newton(|x| Ok((x.powi(3) - x - 1.0, 3.0 * x * x - 1.0)), -1.0, 2.0, 0.0, 1e-14)
            .unwrap();
        assert!((r.powi(3) - r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_missing_sign_change() {
        let err = safeguarded_newton(|x| Ok((x * x + 1.0, 2.0 * x)), -1.0, 1.0, 0.0, 1e-12);
        assert!(matches!(err, Err(Error::Bracketing(_))));
    }

    #[test]
    fn counts_changes() {
        let n = count_sign_changes(|x| Ok(x.sin()), 0.5, 10.0, 64).unwrap();
        assert_eq!(n, 3);
    }
}
