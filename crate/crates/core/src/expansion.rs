//! The series `Λ_N^δ = Σ δ^k λ_k`, `U_N^δ = Σ δ^k u_k` for the Robin branch
//! accumulating at a sector Dirichlet eigenvalue.
//!
//! Starting from the Dirichlet pair `(λ_0, u_0)`, each order solves the
//! resonant problem
//!
//! ```text
//!   -Δu_k - λ_0 u_k = Σ_{p<k} λ_{k-p} u_p  in Ω,   u_k = ∂_ν u_{k-1}  on Γ,
//!   λ_k = ∫_Γ ∂_ν u_{k-1} ∂_ν u_0,          ∫_Ω u_k u_0 = 0.
//! ```
//!
//! Normal derivatives `g_k = v_k'(R)` are recovered variationally from the
//! boundary row of the discrete equation, not by differencing.
//!
//! ```
//! use std::sync::Arc;
//! use robin_core::disk::DiskGeometry;
//! use robin_core::expansion::{build_series, eval_lambda};
//! use robin_core::radial::{ElementOrder, Grading, RadialGrid};
//!
//! let grid = RadialGrid::build(DiskGeometry::unit(), 128, ElementOrder::Quadratic, Grading::Uniform)?;
//! let series = build_series(0, 1, Arc::new(grid), 2)?;
//! let l = series.lambdas();
//! assert!((l[1] / l[0] - 2.0).abs() < 1e-6);
//! assert_eq!(eval_lambda(&series, 0.0, 2)?, l[0]);
//! # Ok::<(), robin_core::Error>(())
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::banded;
use crate::disk::{dirichlet_eigenpair, DiskGeometry, Profile};
use crate::error::{Error, Result};
use crate::radial::{assemble, RadialFunction, RadialGrid, SectorPencil};

pub const DEFAULT_ORDER: usize = 4;

/// Allowed relative mismatch between the discrete and analytic `λ_0`.
pub const GRID_ACCURACY_TOL: f64 = 1e-6;

pub const COMPATIBILITY_REL_TOL: f64 = 1e-6;
pub const COMPATIBILITY_ABS_TOL: f64 = 1e-8;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct ExpansionSeries {
    n: u32,
    pencil: SectorPencil,
    lambdas: Vec<f64>,
    /// `λ_k` implied by the bordered-system multiplier, `None` for `k = 0`.
    multipliers: Vec<Option<f64>>,
    profiles: Vec<RadialFunction>,
    fluxes: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub delta: f64,
    pub order: usize,
    pub dual_norm: f64,
    pub mu_hat: f64,
}

/// Seed the series with the discrete Dirichlet pair `(m, n)`.
pub fn init_series(m: u32, n: u32, grid: Arc<RadialGrid>) -> Result<ExpansionSeries> {
    if n == 0 {
        return Err(Error::InvalidParameter("radial index n starts at 1".into()));
    }
    let geometry = DiskGeometry::new(grid.radius())?;
    let exact = dirichlet_eigenpair(m, n, geometry)?.lambda;
    let pencil = assemble(m, grid)?;
    let pairs = pencil.solve_dirichlet_discrete(n as usize)?;
    let pair = pairs.into_iter().last().expect("n >= 1 pairs");
    let lambda0 = pair.lambda;
    if ((lambda0 - exact) / exact).abs() > GRID_ACCURACY_TOL {
        return Err(Error::GridAccuracy {
            discrete: lambda0,
            analytic: exact,
            tol: GRID_ACCURACY_TOL,
        });
    }
    let Profile::Discrete(u0) = pair.profile else {
        unreachable!("discrete solve returns discrete profiles")
    };
    let mut series = ExpansionSeries {
        n,
        pencil,
        lambdas: vec![lambda0],
        multipliers: vec![None],
        profiles: vec![u0],
        fluxes: Vec::new(),
    };
    let g0 = series.boundary_flux(0);
    series.fluxes.push(g0);
    Ok(series)
}

/// [`init_series`] followed by `order` calls to [`step`].
pub fn build_series(m: u32, n: u32, grid: Arc<RadialGrid>, order: usize) -> Result<ExpansionSeries> {
    let mut s = init_series(m, n, grid)?;
    for _ in 0..order {
        s = step(s)?;
    }
    Ok(s)
}

/// Extend the series by one order.
pub fn step(mut series: ExpansionSeries) -> Result<ExpansionSeries> {
    let k = series.order() + 1;
    let p = &series.pencil;
    let radius = p.radius();
    let g_prev = series.fluxes[k - 1];
    let lambda_k = radius * g_prev * series.fluxes[0];
    let lambda0 = series.lambdas[0];

    let full = p.grid().dof_count();
    let bdof = full - 1;
    let interior = p.free_range(true);
    let ni = interior.len();
    let a = p.stiffness().combine(-lambda0, p.mass());
    let mu0 = p.mass().matvec(series.profiles[0].coeffs());

    let mut rhs_full = vec![0.0; full];
    for q in 1..k {
        let mu = p.mass().matvec(series.profiles[q].coeffs());
        for (r, v) in rhs_full.iter_mut().zip(&mu) {
            *r += series.lambdas[k - q] * v;
        }
    }
    let mut system = DMatrix::<f64>::zeros(ni + 1, ni + 1);
    let mut rhs = DVector::<f64>::zeros(ni + 1);
    for (i, gi) in interior.clone().enumerate() {
        for (j, gj) in interior.clone().enumerate() {
            if gi.abs_diff(gj) <= a.bandwidth() {
                system[(i, j)] = a.get(gi, gj);
            }
        }
        system[(i, ni)] = mu0[gi];
        system[(ni, i)] = mu0[gi];
        rhs[i] = rhs_full[gi] - a.get(gi, bdof) * g_prev;
    }
    rhs[ni] = -mu0[bdof] * g_prev;
    let lu = system.clone().lu();
    let singular = || Error::Factorization("bordered system is singular; lambda_0 not simple".into());
    let mut solution = lu.solve(&rhs).ok_or_else(singular)?;
    // one step of iterative refinement keeps the constraint row at rounding level
    let correction = lu.solve(&(&rhs - &system * &solution)).ok_or_else(singular)?;
    solution += correction;
    let multiplier = -solution[ni];
    let defect = multiplier - lambda_k;
    if defect.abs() > COMPATIBILITY_REL_TOL * lambda_k.abs() + COMPATIBILITY_ABS_TOL {
        return Err(Error::CompatibilityDefect {
            order: k,
            multiplier,
            flux: lambda_k,
        });
    }

    let mut coeffs = vec![0.0; full];
    for (i, gi) in interior.enumerate() {
        coeffs[gi] = solution[i];
    }
    coeffs[bdof] = g_prev;
    let uk = RadialFunction::new(p.grid().clone(), coeffs)?;
    let overlap = banded::dot(&mu0, uk.coeffs());
    let scale = p.mass().form(uk.coeffs(), uk.coeffs()).sqrt().max(1.0);
    if overlap.abs() > ORTHOGONALITY_TOL * scale {
        return Err(Error::Factorization(format!(
            "order {k} correction lost orthogonality to u_0 ({overlap:e})"
        )));
    }
    series.lambdas.push(lambda_k);
    series.multipliers.push(Some(multiplier));
    series.profiles.push(uk);
    let gk = series.boundary_flux(k);
    series.fluxes.push(gk);
    Ok(series)
}

/// `Λ_N^δ = Σ_{k≤N} δ^k λ_k` by Horner's rule.
pub fn eval_lambda(series: &ExpansionSeries, delta: f64, order: usize) -> Result<f64> {
    series.check_order(order)?;
    Ok(series.lambdas[..=order].iter().rev().fold(0.0, |acc, l| acc * delta + l))
}

/// `U_N^δ = Σ_{k≤N} δ^k u_k`.
pub fn eval_profile(series: &ExpansionSeries, delta: f64, order: usize) -> Result<RadialFunction> {
    series.check_order(order)?;
    let mut coeffs = vec![0.0; series.pencil.grid().dof_count()];
    for u in series.profiles[..=order].iter().rev() {
        for (c, v) in coeffs.iter_mut().zip(u.coeffs()) {
            *c = *c * delta + v;
        }
    }
    RadialFunction::new(series.pencil.grid().clone(), coeffs)
}

/// `H¹_δ`-dual norm of `E_N^δ(Û, ·)` for `Û = U_N^δ / ‖U_N^δ‖_{H¹_δ}`.
///
/// With `A_δ = S - T/δ + (α/δ²) M` and `μ̂ = Λ_N^δ + α/δ²` the residual
/// vector is `r = (A_δ - μ̂ M) Û`, and its dual norm is `√(rᵀ G_δ⁻¹ r)`.
pub fn residual_dual_norm(series: &ExpansionSeries, delta: f64, order: usize, alpha: f64) -> Result<ResidualReport> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must be > 0")));
    }
    let p = &series.pencil;
    let theta = p.min_coercivity_eigenvalue(delta, alpha)?;
    if theta <= 0.0 {
        return Err(Error::NotCoercive {
            alpha,
            delta,
            theta_min: theta,
        });
    }
    let lambda = eval_lambda(series, delta, order)?;
    let mu_hat = lambda + alpha / (delta * delta);
    let gram = p.h1_delta_gram(delta);
    let mut u = p.restrict(&eval_profile(series, delta, order)?, false);
    let norm = gram.form(&u, &u).sqrt();
    for v in &mut u {
        *v /= norm;
    }
    let operator = p
        .robin_operator(delta)
        .combine(alpha / (delta * delta), &p.free_mass(false))
        .combine(-mu_hat, &p.free_mass(false));
    let r = operator.matvec(&u);
    let z = gram.ldlt().solve(&r);
    Ok(ResidualReport {
        delta,
        order,
        dual_norm: banded::dot(&r, &z).max(0.0).sqrt(),
        mu_hat,
    })
}

impl ExpansionSeries {
    pub fn m(&self) -> u32 {
        self.pencil.mode().m()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn multipliers(&self) -> &[Option<f64>] {
        &self.multipliers
    }

    pub fn fluxes(&self) -> &[f64] {
        &self.fluxes
    }

    pub fn profiles(&self) -> &[RadialFunction] {
        &self.profiles
    }

    pub fn pencil(&self) -> &SectorPencil {
        &self.pencil
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if order > self.order() {
            return Err(Error::InvalidParameter(format!(
                "order {order} exceeds series order {}",
                self.order()
            )));
        }
        Ok(())
    }

    /// `R g_k = (S u_k - Σ_{p≤k} λ_{k-p} M u_p)_b`.
    fn boundary_flux(&self, k: usize) -> f64 {
        let row = self.weak_rows(k, None);
        row[row.len() - 1] / self.pencil.radius()
    }

    /// `S u_k - Σ_{p≤k} λ_{k-p} M u_p - R g_k e_b` on all degrees of freedom.
    fn weak_rows(&self, k: usize, flux: Option<f64>) -> Vec<f64> {
        let p = &self.pencil;
        let mut out = p.stiffness().matvec(self.profiles[k].coeffs());
        for q in 0..=k {
            let mu = p.mass().matvec(self.profiles[q].coeffs());
            for (o, v) in out.iter_mut().zip(&mu) {
                *o -= self.lambdas[k - q] * v;
            }
        }
        if let Some(g) = flux {
            let b = out.len() - 1;
            out[b] -= p.radius() * g;
        }
        out
    }

    /// Largest entry of the discrete weak-form residual of order `k`, tested
    /// against every basis function of the Robin space.
    pub fn weak_residual(&self, k: usize) -> f64 {
        let rows = self.weak_rows(k, Some(self.fluxes[k]));
        rows[self.pencil.free_range(false)]
            .iter()
            .fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    /// `∫_Ω u_k u_0`, in sector form `∫ v_k v_0 r dr`.
    pub fn overlap_with_seed(&self, k: usize) -> f64 {
        self.pencil
            .mass()
            .form(self.profiles[k].coeffs(), self.profiles[0].coeffs())
    }

    /// Plain-text table: a header line, then `k λ_k g_k` per order.
    pub fn to_table(&self) -> String {
        let mut out = String::from("k lambda_k flux_k\n");
        for k in 0..=self.order() {
            writeln!(out, "{k} {:.16e} {:.16e}", self.lambdas[k], self.fluxes[k]).expect("string write");
        }
        out
    }
}

/// One record of a serialized series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub k: usize,
    pub lambda: f64,
    pub flux: f64,
}

/// Parse the output of [`ExpansionSeries::to_table`].
pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.split_whitespace().eq(["k", "lambda_k", "flux_k"]) => {}
        _ => return Err(Error::InvalidParameter("missing series table header".into())),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let bad = || Error::InvalidParameter(format!("malformed series record: {line:?}"));
            let mut f = line.split_whitespace();
            let k = f.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let lambda = f.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let flux = f.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            if f.next().is_some() {
                return Err(bad());
            }
            Ok(TableRow { k, lambda, flux })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::find_robin_near;
    use crate::radial::{ElementOrder, Grading};

    fn grid(n: usize) -> Arc<RadialGrid> {
        Arc::new(RadialGrid::build(DiskGeometry::unit(), n, ElementOrder::Quadratic, Grading::Uniform).unwrap())
    }

    #[test]
    fn seed_matches_dirichlet() {
        let s = init_series(0, 1, grid(256)).unwrap();
        assert!((s.lambdas()[0] - 5.783185962946785).abs() < 1e-7);
        assert!((s.overlap_with_seed(0) - 1.0).abs() < 1e-10);
        // ∂_ν u_0 = -j / √(2π) per unit circle length in sector normalization
        let j = 2.404825557695773;
        assert!((s.fluxes()[0] + j * 2f64.sqrt()).abs() < 1e-6, "{}", s.fluxes()[0]);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        assert!(matches!(init_series(0, 3, grid(4)), Err(Error::GridAccuracy { .. })));
    }

    #[test]
    fn steps_keep_invariants() {
        let s = build_series(1, 1, grid(256), 3).unwrap();
        for k in 1..=3 {
            assert!(s.overlap_with_seed(k).abs() < 1e-10);
            let mult = s.multipliers()[k].unwrap();
            assert!((mult - s.lambdas()[k]).abs() <= 1e-6 * s.lambdas()[k].abs());
            assert!(s.weak_residual(k) < 1e-7, "k={k}: {}", s.weak_residual(k));
        }
        assert!(s.lambdas()[1] > 0.0);
        assert!((s.lambdas()[1] - 2.0 * s.lambdas()[0]).abs() < 1e-6 * s.lambdas()[1]);
    }

    #[test]
    fn horner_and_truncation() {
        let s = build_series(0, 1, grid(128), 2).unwrap();
        let d = 0.01;
        let l1 = eval_lambda(&s, d, 1).unwrap();
        let l2 = eval_lambda(&s, d, 2).unwrap();
        assert!((l2 - l1 - d * d * s.lambdas()[2]).abs() < 1e-13);
        assert!(eval_lambda(&s, d, 3).is_err());
        let exact = find_robin_near(s.lambdas()[0], 0, DiskGeometry::unit(), d).unwrap().lambda;
        assert!((l2 - exact).abs() < (l1 - exact).abs());
    }

    #[test]
    fn table_round_trip() {
        let s = build_series(0, 1, grid(64), 1).unwrap();
        let rows = parse_table(&s.to_table()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].lambda, s.lambdas()[1]);
        assert_eq!(rows[0].flux, s.fluxes()[0]);
        assert!(parse_table("nonsense\n").is_err());
    }

    #[test]
    fn residual_requires_coercivity() {
        let s = build_series(0, 1, grid(64), 1).unwrap();
        assert!(matches!(
            residual_dual_norm(&s, 0.05, 1, 0.0),
            Err(Error::NotCoercive { .. })
        ));
        let r = residual_dual_norm(&s, 0.05, 1, 4.0).unwrap();
        assert!(r.dual_norm >= 0.0);
    }
}
