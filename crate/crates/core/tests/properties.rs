use proptest::prelude::*;
use robin_core::disk::{find_robin_accumulating, secular_residual, DiskGeometry};
use robin_core::experiments::{fit_loglog, parse_delta_range};
use robin_core::specfun::{bessel_i_scaled_with_deriv, bessel_j, bessel_j_zero};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeros_interlace(m in 0u32..20, n in 1u32..20) {
        let a = bessel_j_zero(m, n).unwrap();
        let b = bessel_j_zero(m + 1, n).unwrap();
        let c = bessel_j_zero(m, n + 1).unwrap();
        prop_assert!(a < b && b < c);
    }

    #[test]
    fn j_three_term_recurrence(m in 1u32..30, x in 0.5f64..40.0) {
        let lhs = bessel_j(m - 1, x).unwrap() + bessel_j(m + 1, x).unwrap();
        let rhs = 2.0 * m as f64 / x * bessel_j(m, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + 2.0 * m as f64 / x));
    }

    #[test]
    fn i_three_term_recurrence(m in 1u32..30, x in 0.5f64..600.0) {
        let lo = bessel_i_scaled_with_deriv(m - 1, x).unwrap().0;
        let mid = bessel_i_scaled_with_deriv(m, x).unwrap().0;
        let hi = bessel_i_scaled_with_deriv(m + 1, x).unwrap().0;
        prop_assert!(((lo - hi) - 2.0 * m as f64 / x * mid).abs() <= 1e-13 * lo);
    }

    #[test]
    fn robin_roots_bracketed_and_monotone(m in 0u32..4, n in 1u32..4, delta in 0.01f64..0.5) {
        let unit = DiskGeometry::unit();
        let p = find_robin_accumulating(m, n, unit, delta).unwrap();
        let lo = bessel_j_zero(m, n).unwrap().powi(2);
        let hi = bessel_j_zero(m, n + 1).unwrap().powi(2);
        prop_assert!(p.lambda > lo && p.lambda < hi);
        prop_assert!(secular_residual(&p).unwrap() <= 1e-10);
        let smaller = find_robin_accumulating(m, n, unit, 0.5 * delta).unwrap();
        prop_assert!(smaller.lambda <= p.lambda);
    }

    #[test]
    fn delta_ranges_are_log_spaced(a in 0.05f64..0.5, decades in 0.5f64..3.0, k in 1u32..10) {
        let b = a * 10f64.powf(-decades);
        let d = parse_delta_range(&format!("{a}:{b}:log{k}")).unwrap();
        prop_assert_eq!(d[0], a);
        prop_assert_eq!(*d.last().unwrap(), b);
        let ratios: Vec<f64> = d.windows(2).map(|w| w[1] / w[0]).collect();
        for r in &ratios {
            prop_assert!((r / ratios[0] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn power_laws_are_recovered(p in -3.0f64..5.0, c in 0.01f64..100.0) {
        let pts: Vec<(f64, f64)> = (0..6).map(|i| {
            let x = 0.2 * 0.6f64.powi(i);
            (x, c * x.powf(p))
        }).collect();
        let f = fit_loglog(&pts).unwrap();
        prop_assert!((f.slope - p).abs() < 1e-9);
        prop_assert!((f.intercept - c.ln()).abs() < 1e-8);
    }
}
