//! Bessel functions of integer order: `J_m`, `I_m`, their derivatives and the
//! positive zeros of `J_m`.
//!
//! Small arguments use the power series. Elsewhere both families are computed
//! by Miller's backward recurrence, normalized with the generating-function
//! sums `J_0 + 2 Σ J_{2k} = 1` and `I_0 + 2 Σ I_k = e^x`. The second sum yields
//! `e^{-x} I_m(x)` directly, so the scaled modified function never overflows.

use crate::error::{Error, Result};

/// Largest order accepted by the evaluators.
pub const MAX_ORDER: u32 = 50;

/// Largest zero index accepted by [`bessel_j_zero`].
pub const MAX_ZERO_INDEX: u32 = 50;

/// Above this argument `I_m(x)` itself is not representable.
pub const UNSCALED_I_LIMIT: f64 = 700.0;

const RESCALE_AT: f64 = 1.0e250;

/// Whether a modified Bessel value is returned as `I_m(x)` or `e^{-x} I_m(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    Unscaled,
    Scaled,
}

fn check_args(m: u32, x: f64) -> Result<()> {
    if m > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "order {m} exceeds {MAX_ORDER}"
        )));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("x = {x} must be finite and >= 0")));
    }
    Ok(())
}

/// The power series has no harmful cancellation while `(x/2)^2 <= (m+1)/2`.
fn use_series(m: u32, x: f64) -> bool {
    x <= 2.0 || 0.25 * x * x <= 0.5 * (m as f64 + 1.0)
}

/// `Σ_k s^k (x/2)^{2k+m} / (k! (k+m)!)` with `s = -1` for J and `+1` for I.
fn series(m: u32, x: f64, alternating: bool) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=m {
        term *= half / i as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = if alternating { -half * half } else { half * half };
    let mut sum = term;
    for k in 1..500u32 {
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() <= 1.0e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller_start(m: u32, x: f64, modified: bool) -> u32 {
    let base = (m as f64).max(x.ceil());
    let extra = if modified {
        (80.0 * x).sqrt()
    } else {
        (160.0 * base).sqrt()
    };
    let n = (base + extra + 20.0) as u32 + m;
    n + (n & 1)
}

/// Values of order `m - 1`, `m`, `m + 1` from one backward sweep.
///
/// For `J` the result is `J` itself; for `I` it is `e^{-x} I`.
fn miller_window(m: u32, x: f64, modified: bool) -> [f64; 3] {
    let start = miller_start(m + 1, x, modified);
    let two_over_x = 2.0 / x;
    let mut above = 0.0;
    let mut current = 1.0e-30;
    let mut norm = 0.0;
    let mut window = [0.0; 3];
    let capture = |order: u32, value: f64, window: &mut [f64; 3]| {
        if order + 1 == m {
            window[0] = value;
        } else if order == m {
            window[1] = value;
        } else if order == m + 1 {
            window[2] = value;
        }
    };
    capture(start, current, &mut window);
    let mut k = start;
    while k > 0 {
        let below = if modified {
            k as f64 * two_over_x * current + above
        } else {
            k as f64 * two_over_x * current - above
        };
        above = current;
        current = below;
        k -= 1;
        // `current` now holds order k.
        capture(k, current, &mut window);
        if k == 0 {
            norm += current;
        } else if modified || k % 2 == 0 {
            norm += 2.0 * current;
        }
        if current.abs() > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            current *= s;
            above *= s;
            norm *= s;
            for w in window.iter_mut() {
                *w *= s;
            }
        }
    }
    for w in window.iter_mut() {
        *w /= norm;
    }
    window
}

/// `[J_{m-1}, J_m, J_{m+1}]` with `J_{-1} = -J_1`.
fn j_window(m: u32, x: f64) -> [f64; 3] {
    if x == 0.0 {
        let at = |k: u32| if k == 0 { 1.0 } else { 0.0 };
        return [if m == 0 { 0.0 } else { at(m - 1) }, at(m), at(m + 1)];
    }
    let mut w = if use_series(m.saturating_sub(1), x) {
        let lower = if m == 0 { 0.0 } else { series(m - 1, x, true) };
        [lower, series(m, x, true), series(m + 1, x, true)]
    } else {
        miller_window(m, x, false)
    };
    if m == 0 {
        w[0] = -w[2];
    }
    w
}

/// `[I_{m-1}, I_m, I_{m+1}]` times `e^{-x}`, with `I_{-1} = I_1`.
fn i_window_scaled(m: u32, x: f64) -> [f64; 3] {
    if x == 0.0 {
        let at = |k: u32| if k == 0 { 1.0 } else { 0.0 };
        return [if m == 0 { 0.0 } else { at(m - 1) }, at(m), at(m + 1)];
    }
    let mut w = if use_series(m.saturating_sub(1), x) {
        let e = (-x).exp();
        let lower = if m == 0 { 0.0 } else { series(m - 1, x, false) };
        [lower * e, series(m, x, false) * e, series(m + 1, x, false) * e]
    } else {
        miller_window(m, x, true)
    };
    if m == 0 {
        w[0] = w[2];
    }
    w
}

fn unscale(value: f64, x: f64, scaling: Scaling) -> Result<f64> {
    match scaling {
        Scaling::Scaled => Ok(value),
        Scaling::Unscaled if x > UNSCALED_I_LIMIT => Err(Error::Overflow(format!(
            "I_m({x}) overflows; request the scaled value"
        ))),
        Scaling::Unscaled => Ok(value * x.exp()),
    }
}

/// Bessel function of the first kind `J_m(x)`.
pub fn bessel_j(m: u32, x: f64) -> Result<f64> {
    check_args(m, x)?;
    Ok(j_window(m, x)[1])
}

/// `J_m'(x) = (J_{m-1}(x) - J_{m+1}(x)) / 2`, with `J_0' = -J_1`.
pub fn bessel_j_deriv(m: u32, x: f64) -> Result<f64> {
    check_args(m, x)?;
    let [lo, _, hi] = j_window(m, x);
    Ok(0.5 * (lo - hi))
}

/// `J_m(x)` and `J_m'(x)` from one evaluation.
pub fn bessel_j_with_deriv(m: u32, x: f64) -> Result<(f64, f64)> {
    check_args(m, x)?;
    let [lo, mid, hi] = j_window(m, x);
    Ok((mid, 0.5 * (lo - hi)))
}

/// Modified Bessel function `I_m(x)`, or `e^{-x} I_m(x)` when scaled.
pub fn bessel_i(m: u32, x: f64, scaling: Scaling) -> Result<f64> {
    check_args(m, x)?;
    unscale(i_window_scaled(m, x)[1], x, scaling)
}

/// `I_m'(x) = (I_{m-1}(x) + I_{m+1}(x)) / 2`, with `I_0' = I_1`.
pub fn bessel_i_deriv(m: u32, x: f64, scaling: Scaling) -> Result<f64> {
    check_args(m, x)?;
    let [lo, _, hi] = i_window_scaled(m, x);
    unscale(0.5 * (lo + hi), x, scaling)
}

/// Scaled `e^{-x} I_m(x)` and `e^{-x} I_m'(x)` from one evaluation.
pub fn bessel_i_scaled_with_deriv(m: u32, x: f64) -> Result<(f64, f64)> {
    check_args(m, x)?;
    let [lo, mid, hi] = i_window_scaled(m, x);
    Ok((mid, 0.5 * (lo + hi)))
}

/// McMahon's large-zero expansion of `j_{m,n}`.
fn mcmahon(m: u32, n: u32) -> f64 {
    let mu = 4.0 * (m as f64).powi(2);
    let beta = (n as f64 + 0.5 * m as f64 - 0.25) * std::f64::consts::PI;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5))
}

/// The `n`-th positive zero `j_{m,n}` of `J_m`.
///
/// Zeros are bracketed by counting sign changes on a unit-step scan starting
/// from `x = m` (no zero of `J_m` lies in `(0, m]`, and consecutive zeros are
/// more than 2 apart). The McMahon estimate seeds a safeguarded Newton
/// iteration inside the bracket.
pub fn bessel_j_zero(m: u32, n: u32) -> Result<f64> {
    if m > MAX_ORDER || n == 0 || n > MAX_ZERO_INDEX {
        return Err(Error::InvalidParameter(format!(
            "zero index (m = {m}, n = {n}) outside 0..={MAX_ORDER} x 1..={MAX_ZERO_INDEX}"
        )));
    }
    let step = 1.0;
    let mut lo = (m as f64).max(1.0e-3);
    let mut f_lo = bessel_j(m, lo)?;
    let mut found = 0;
    let limit = m as f64 + (n as f64 + 0.5 * m as f64 + 1.0) * std::f64::consts::PI + 10.0;
    while lo < limit {
        let hi = lo + step;
        let f_hi = bessel_j(m, hi)?;
        if f_lo == 0.0 {
            found += 1;
            if found == n {
                return Ok(lo);
            }
        } else if f_lo * f_hi < 0.0 {
            found += 1;
            if found == n {
                let guess = mcmahon(m, n);
                let start = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
                let root = crate::roots::safeguarded_newton(
                    |x| bessel_j_with_deriv(m, x),
                    lo,
                    hi,
                    start,
                    1.0e-15,
                )?;
                return Ok(root);
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::Bracketing(format!(
        "zero j_({m},{n}) not bracketed below {limit}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_deriv(0, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_deriv(1, 0.0).unwrap(), 0.5);
        assert_eq!(bessel_i(0, 0.0, Scaling::Unscaled).unwrap(), 1.0);
        assert_eq!(bessel_i(2, 0.0, Scaling::Unscaled).unwrap(), 0.0);
        assert_eq!(bessel_i_deriv(0, 0.0, Scaling::Unscaled).unwrap(), 0.0);
        assert_eq!(bessel_i_deriv(1, 0.0, Scaling::Unscaled).unwrap(), 0.5);
    }

    #[test]
    fn derivative_identities() {
        for &x in &[0.3, 1.7, 4.0, 11.5, 37.0] {
            let d0 = bessel_j_deriv(0, x).unwrap();
            let j1 = bessel_j(1, x).unwrap();
            assert!((d0 + j1).abs() <= 2e-15 * j1.abs().max(1e-3));
            let i0 = bessel_i_deriv(0, x, Scaling::Unscaled).unwrap();
            let i1 = bessel_i(1, x, Scaling::Unscaled).unwrap();
            assert!((i0 - i1).abs() <= 1e-15 * i1.abs());
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(bessel_j(0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_i(0, -0.5, Scaling::Scaled), Err(Error::Domain(_))));
        assert!(matches!(
            bessel_i(0, 701.0, Scaling::Unscaled),
            Err(Error::Overflow(_))
        ));
        assert!(bessel_i(0, 701.0, Scaling::Scaled).is_ok());
        assert!(bessel_j_zero(0, 0).is_err());
        assert!(bessel_j(51, 1.0).is_err());
    }

    #[test]
    fn first_zeros_of_j0() {
        let z1 = bessel_j_zero(0, 1).unwrap();
        let z2 = bessel_j_zero(0, 2).unwrap();
        assert!((z1 - 2.404825557695773).abs() <= 1e-12);
        assert!((z2 - 5.520078110286311).abs() <= 1e-12);
        assert!(bessel_j(0, z1).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn scaled_i_at_large_argument_follows_asymptote() {
        let v = bessel_i(0, 50.0, Scaling::Scaled).unwrap();
        let asym = 1.0 / (2.0 * std::f64::consts::PI * 50.0).sqrt();
        assert!(v > 0.0 && ((v - asym) / asym).abs() < 0.01);
    }

    #[test]
    fn high_zeros_are_roots() {
        for &(m, n) in &[(50, 1), (50, 50), (0, 50), (17, 9)] {
            let z = bessel_j_zero(m, n).unwrap();
            let (j, d) = bessel_j_with_deriv(m, z).unwrap();
            assert!(j.abs() <= 1e-12, "J_{m}(j_{m},{n}) = {j}");
            assert!(d.abs() > 1e-3);
        }
    }
}
