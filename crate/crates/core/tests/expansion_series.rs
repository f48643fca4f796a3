use std::sync::Arc;

use robin_core::disk::{dirichlet_eigenpair, eval_profile_with_deriv, DiskGeometry};
use robin_core::expansion::{build_series, eval_lambda, parse_table};
use robin_core::radial::{ElementOrder, Grading, RadialGrid};

fn grid(n: usize, radius: f64) -> Arc<RadialGrid> {
    let geo = DiskGeometry::new(radius).unwrap();
    Arc::new(RadialGrid::build(geo, n, ElementOrder::Quadratic, Grading::Uniform).unwrap())
}

// m = 0, n = 1, R = 1, from the characteristic-equation expansion in
// 50-digit arithmetic
const FROZEN: [f64; 5] = [
    5.783185962946785,
    11.566371925893570,
    11.566371925893570,
    -14.585911970800,
    -74.183435747600,
];

#[test]
fn coefficients_match_high_precision_values() {
    let s = build_series(0, 1, grid(512, 1.0), 4).unwrap();
    for (k, (&got, &want)) in s.lambdas().iter().zip(&FROZEN).enumerate() {
        assert!(((got - want) / want).abs() < 1e-7, "lambda_{k} = {got}, expected {want}");
    }
}

#[test]
fn first_coefficient_equals_boundary_flux_of_analytic_seed() {
    for radius in [1.0, 2.5] {
        let geo = DiskGeometry::new(radius).unwrap();
        for (m, n) in [(0, 1), (0, 2), (0, 3), (2, 1)] {
            let d = dirichlet_eigenpair(m, n, geo).unwrap();
            let (_, flux) = eval_profile_with_deriv(&d, radius).unwrap();
            let oracle = radius * flux * flux;
            let s = build_series(m, n, grid(512, radius), 1).unwrap();
            let l1 = s.lambdas()[1];
            assert!(((l1 - oracle) / oracle).abs() < 1e-6, "m={m} n={n} R={radius}");
            assert!(((l1 - 2.0 * d.lambda / radius) / l1).abs() < 1e-6);
        }
    }
}

#[test]
fn invariants_hold_at_every_order() {
    let s = build_series(1, 2, grid(384, 1.0), 4).unwrap();
    assert!((s.overlap_with_seed(0) - 1.0).abs() <= 1e-10);
    for k in 1..=4 {
        assert!(s.overlap_with_seed(k).abs() <= 1e-10, "orthogonality at k={k}");
        let mult = s.multipliers()[k].unwrap();
        let l = s.lambdas()[k];
        assert!((mult - l).abs() <= 1e-6 * l.abs() + 1e-8, "compatibility at k={k}");
        assert!(s.weak_residual(k) <= 1e-8 * l.abs().max(1.0), "weak form at k={k}");
    }
}

#[test]
fn coefficients_are_grid_stable() {
    for (m, n) in [(0, 1), (2, 2)] {
        let coarse = build_series(m, n, grid(256, 1.0), 3).unwrap();
        let fine = build_series(m, n, grid(512, 1.0), 3).unwrap();
        for k in 1..=3 {
            let (a, b) = (coarse.lambdas()[k], fine.lambdas()[k]);
            assert!(((a - b) / b).abs() <= 1e-5, "m={m} n={n} k={k}: {a} vs {b}");
        }
    }
}

#[test]
fn truncations_differ_by_one_term() {
    let s = build_series(0, 2, grid(256, 1.0), 4).unwrap();
    for delta in [0.0, 0.01, 0.1] {
        assert_eq!(eval_lambda(&s, delta, 0).unwrap(), s.lambdas()[0]);
        for order in 1..=4 {
            let diff = eval_lambda(&s, delta, order).unwrap() - eval_lambda(&s, delta, order - 1).unwrap();
            let term = delta.powi(order as i32) * s.lambdas()[order];
            assert!((diff - term).abs() <= 1e-13 * s.lambdas()[0].abs());
        }
    }
}

#[test]
fn archived_table_parses_back() {
    let s = build_series(0, 1, grid(128, 1.0), 4).unwrap();
    let rows = parse_table(&s.to_table()).unwrap();
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row.k, k);
        assert_eq!(row.lambda.to_bits(), s.lambdas()[k].to_bits());
        assert_eq!(row.flux.to_bits(), s.fluxes()[k].to_bits());
    }
}
