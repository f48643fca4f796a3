//! δ-sweeps with fitted log-log rates.
//!
//! Analytic secular roots are the reference wherever an error is measured;
//! the finite-element path enters only through the expansion series and the
//! quadratic forms that have no closed form (coercivity, residual norms).
//! Every study is deterministic.

use std::sync::Arc;

use crate::disk::{
    dirichlet_eigenpair, find_robin_accumulating, find_surface_eigenvalue, masses, DiskEigenpair, DiskGeometry,
};
use crate::error::{Error, Result};
use crate::expansion::{build_series, eval_lambda, residual_dual_norm};
use crate::radial::{assemble, ElementOrder, Grading, RadialGrid};
use crate::report::Table;

pub const DEFAULT_ELEMENTS: usize = 512;
pub const DEFAULT_ELEMENT_ORDER: ElementOrder = ElementOrder::Quadratic;
/// Boundary layer width as a fraction of `R`; half the elements go there.
pub const DEFAULT_LAYER_FRACTION: f64 = 0.2;
/// `ρ = R/2` for the inner disk `K`.
pub const DEFAULT_RHO_FRACTION: f64 = 0.5;
pub const DEFAULT_ALPHAS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];
/// Shift used by the residual study.
pub const DEFAULT_RESIDUAL_ALPHA: f64 = 4.0;
/// Smallest `θ` accepted when picking the coercive column `α*`.
pub const THETA_FLOOR: f64 = 0.1;
pub const COERCIVITY_DELTAS: [f64; 4] = [0.1, 0.05, 0.02, 0.01];
/// Rows with error below this multiple of the discretization floor are dropped.
pub const FLOOR_FACTOR: f64 = 100.0;
pub const MIN_FIT_QUALITY: f64 = 0.98;
pub const MAX_SWEEP_DELTA: f64 = 0.5;
pub const MAX_SURFACE_DELTA: f64 = 0.2;
/// Rows of `|δ²λ + 1| ≤ C δ/R` use this `C`.
pub const SURFACE_BOUND: f64 = 5.0;
pub const SURFACE_MASS_LIMIT: f64 = 1e-12;

/// Documented default δ range for each study, in `a:b:logK` syntax.
pub fn default_delta_range(study: &str, order: usize) -> &'static str {
    match (study, order) {
        ("converge", 0..=2) => "0.1:0.0125:log6",
        ("converge", _) => "0.3:0.03:log6",
        ("surface", _) => "0.1:0.001:log6",
        ("concentrate", _) => "0.05:0.005:log6",
        _ => "0.1:0.01:log6",
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub elements: usize,
    pub order: ElementOrder,
    /// Boundary layer width as a fraction of `R`; `None` for a uniform grid.
    pub layer_fraction: Option<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            elements: DEFAULT_ELEMENTS,
            order: DEFAULT_ELEMENT_ORDER,
            layer_fraction: Some(DEFAULT_LAYER_FRACTION),
        }
    }
}

impl GridSpec {
    pub fn build(&self, geometry: DiskGeometry) -> Result<Arc<RadialGrid>> {
        let grading = match self.layer_fraction {
            Some(f) => Grading::boundary_layer(f * geometry.radius()),
            None => Grading::Uniform,
        };
        Ok(Arc::new(RadialGrid::build(geometry, self.elements, self.order, grading)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub geometry: DiskGeometry,
    pub m: u32,
    pub n: u32,
    pub order: usize,
    pub deltas: Vec<f64>,
    pub grid: GridSpec,
    pub rho: f64,
    pub alpha: f64,
}

impl SweepSpec {
    pub fn new(m: u32, n: u32, order: usize, deltas: Vec<f64>) -> Self {
        let geometry = DiskGeometry::unit();
        Self {
            geometry,
            m,
            n,
            order,
            deltas,
            grid: GridSpec::default(),
            rho: DEFAULT_RHO_FRACTION * geometry.radius(),
            alpha: DEFAULT_RESIDUAL_ALPHA,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_deltas(&self.deltas, MAX_SWEEP_DELTA, 4)?;
        let r = self.geometry.radius();
        if !(self.rho > 0.0 && self.rho < r) {
            return Err(Error::InvalidParameter(format!("rho = {} must lie in (0, {r})", self.rho)));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameter("radial index n starts at 1".into()));
        }
        Ok(())
    }
}

fn validate_deltas(deltas: &[f64], max: f64, min_len: usize) -> Result<()> {
    if deltas.len() < min_len {
        return Err(Error::InvalidParameter(format!(
            "need at least {min_len} delta values, got {}",
            deltas.len()
        )));
    }
    if deltas.iter().any(|&d| !(d > 0.0 && d <= max)) {
        return Err(Error::InvalidParameter(format!("delta values must lie in (0, {max}]")));
    }
    if deltas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParameter("delta values must decrease strictly".into()));
    }
    Ok(())
}

/// Parse `a:b:logK` (K points per decade, both ends included) or a comma list.
pub fn parse_delta_range(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("bad delta range {text:?}; expected a:b:logK or a,b,..."));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 1 {
        return text
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
            .collect();
    }
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let per_decade: u32 = parts[2].trim().strip_prefix("log").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) || per_decade == 0 || a == b {
        return Err(bad());
    }
    let decades = (a / b).log10().abs();
    let steps = ((decades * per_decade as f64).round() as usize).max(1);
    let ratio = (b / a).ln();
    Ok((0..=steps)
        .map(|i| {
            if i == steps {
                b
            } else {
                a * (ratio * i as f64 / steps as f64).exp()
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination.
    pub quality: f64,
}

/// Least-squares line through `(ln x, ln y)`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 3 {
        return Err(Error::TooFewRows {
            needed: 3,
            got: points.len(),
        });
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::InvalidParameter("log-log fit needs positive data".into()));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    if sxx <= 1e-24 * n {
        return Err(Error::InvalidParameter("log-log fit: x values are degenerate".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let quality = if syy <= 1e-300 { 1.0 } else { 1.0 - sse / syy };
    Ok(LogLogFit {
        slope,
        intercept,
        quality,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub delta: f64,
    pub lambda_exact: f64,
    pub lambda_series: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub order: usize,
    pub rows: Vec<ConvergenceRow>,
    /// `|λ_0(discrete) - λ_0(analytic)|`.
    pub floor: f64,
    pub excluded: usize,
    pub fit: LogLogFit,
    pub tolerance: f64,
}

impl ConvergenceReport {
    pub fn expected_slope(&self) -> f64 {
        self.order as f64 + 1.0
    }

    pub fn passed(&self) -> bool {
        (self.fit.slope - self.expected_slope()).abs() <= self.tolerance && self.fit.quality >= MIN_FIT_QUALITY
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["delta", "lambda_exact", "lambda_series", "error"]);
        for r in &self.rows {
            t.push(vec![r.delta.into(), r.lambda_exact.into(), r.lambda_series.into(), r.error.into()]);
        }
        t
    }
}

/// Slope tolerance for `|λ^δ - Λ_N^δ|`: ±0.25 up to `N = 2`, ±0.5 beyond.
pub fn convergence_tolerance(order: usize) -> f64 {
    if order <= 2 {
        0.25
    } else {
        0.5
    }
}

/// Error of `Λ_N^δ` against the analytic accumulating root, with a rate fit.
pub fn convergence_study(spec: &SweepSpec) -> Result<ConvergenceReport> {
    spec.validate()?;
    let grid = spec.grid.build(spec.geometry)?;
    let series = build_series(spec.m, spec.n, grid, spec.order)?;
    let analytic0 = dirichlet_eigenpair(spec.m, spec.n, spec.geometry)?.lambda;
    let floor = (series.lambdas()[0] - analytic0).abs();
    let mut rows = Vec::with_capacity(spec.deltas.len());
    for &delta in &spec.deltas {
        let exact = find_robin_accumulating(spec.m, spec.n, spec.geometry, delta)?.lambda;
        let approx = eval_lambda(&series, delta, spec.order)?;
        rows.push(ConvergenceRow {
            delta,
            lambda_exact: exact,
            lambda_series: approx,
            error: (exact - approx).abs(),
        });
    }
    let kept: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.error >= FLOOR_FACTOR * floor && r.error > 0.0)
        .map(|r| (r.delta, r.error))
        .collect();
    let excluded = rows.len() - kept.len();
    if excluded > 0 {
        log::info!("convergence: {excluded} rows below {FLOOR_FACTOR} x floor {floor:e} excluded");
    }
    let fit = fit_loglog(&kept)?;
    Ok(ConvergenceReport {
        order: spec.order,
        rows,
        floor,
        excluded,
        fit,
        tolerance: convergence_tolerance(spec.order),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceRow {
    pub m: u32,
    pub delta: f64,
    pub lambda: f64,
    pub delta2_lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceFit {
    pub m: u32,
    /// Fit of `|δ²λ + 1|` against δ; `None` with fewer than three rows.
    pub fit: Option<LogLogFit>,
    /// Largest `|δ²λ + 1| R / δ` over the sweep.
    pub constant: f64,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceReport {
    pub radius: f64,
    pub rows: Vec<SurfaceRow>,
    pub fits: Vec<SurfaceFit>,
}

impl SurfaceReport {
    /// Every row obeys `|δ²λ + 1| ≤ 5δ/R`, and every fitted rate is `1 ± 0.25`.
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| (r.delta2_lambda + 1.0).abs() <= SURFACE_BOUND * r.delta / self.radius)
            && self
                .fits
                .iter()
                .all(|f| f.fit.map_or(true, |fit| (fit.slope - 1.0).abs() <= 0.25))
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["m", "delta", "lambda", "delta2_lambda"]);
        for r in &self.rows {
            t.push(vec![r.m.into(), r.delta.into(), r.lambda.into(), r.delta2_lambda.into()]);
        }
        t
    }
}

/// `δ²λ^δ` of the surface mode for each `m`, approaching `-1` like `δ/R`.
pub fn surface_limit_study(geometry: DiskGeometry, ms: &[u32], deltas: &[f64]) -> Result<SurfaceReport> {
    validate_deltas(deltas, MAX_SURFACE_DELTA, 1)?;
    let radius = geometry.radius();
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for &m in ms {
        let mut own = Vec::with_capacity(deltas.len());
        for &delta in deltas {
            let pair = find_surface_eigenvalue(m, geometry, delta)?;
            own.push(SurfaceRow {
                m,
                delta,
                lambda: pair.lambda,
                delta2_lambda: delta * delta * pair.lambda,
            });
        }
        let gaps: Vec<(f64, f64)> = own.iter().map(|r| (r.delta, (r.delta2_lambda + 1.0).abs())).collect();
        let fit = if gaps.len() >= 3 { Some(fit_loglog(&gaps)?) } else { None };
        fits.push(SurfaceFit {
            m,
            fit,
            constant: gaps.iter().map(|(d, g)| g * radius / d).fold(0.0, f64::max),
            monotone: gaps.windows(2).all(|w| w[1].1 < w[0].1),
        });
        rows.extend(own);
    }
    Ok(SurfaceReport { radius, rows, fits })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationRow {
    pub branch: &'static str,
    pub delta: f64,
    /// `‖u‖²_{L²(Γ)} / ‖u‖²_{H¹}`.
    pub l2_gamma: f64,
    /// `‖u‖²_{L²(K)} / ‖u‖²_{H¹}`.
    pub l2_k: f64,
    /// `‖u‖²_{H¹}` of the `L²`-normalized eigenfunction.
    pub h1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub rows: Vec<ConcentrationRow>,
    /// Smallest accumulating-branch `‖u‖_{L²(K)}` (not squared) over the sweep.
    pub eta: f64,
    /// `‖u‖_{L²(K)}` of the `H¹`-normalized Dirichlet limit.
    pub dirichlet_mass: f64,
    pub gamma_fit: LogLogFit,
}

impl ConcentrationReport {
    pub fn surface_decreasing(&self) -> bool {
        let s: Vec<f64> = self.rows.iter().filter(|r| r.branch == "surface").map(|r| r.l2_k).collect();
        s.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn surface_small(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.branch == "surface" && r.delta <= 0.01)
            .all(|r| r.l2_k <= SURFACE_MASS_LIMIT)
    }

    pub fn passed(&self) -> bool {
        self.eta > 0.0
            && self.eta >= 0.9 * self.dirichlet_mass
            && self.gamma_fit.slope >= 0.9
            && self.surface_decreasing()
            && self.surface_small()
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["branch", "delta", "l2_gamma", "l2_K", "h1"]);
        for r in &self.rows {
            t.push(vec![r.branch.into(), r.delta.into(), r.l2_gamma.into(), r.l2_k.into(), r.h1.into()]);
        }
        t
    }
}

/// Mass on `K` and on `Γ` of `H¹`-normalized eigenfunctions of both branches.
pub fn concentration_study(spec: &SweepSpec) -> Result<ConcentrationReport> {
    spec.validate()?;
    let mut rows = Vec::new();
    let row = |branch: &'static str, delta: f64, pair: &DiskEigenpair| -> Result<ConcentrationRow> {
        let ms = masses(pair, spec.rho)?;
        Ok(ConcentrationRow {
            branch,
            delta,
            l2_gamma: ms.l2_gamma / ms.h1,
            l2_k: ms.l2_k / ms.h1,
            h1: ms.h1,
        })
    };
    for &delta in &spec.deltas {
        let pair = find_robin_accumulating(spec.m, spec.n, spec.geometry, delta)?;
        rows.push(row("accumulating", delta, &pair)?);
    }
    for &delta in &spec.deltas {
        let pair = find_surface_eigenvalue(spec.m, spec.geometry, delta)?;
        rows.push(row("surface", delta, &pair)?);
    }
    let limit = dirichlet_eigenpair(spec.m, spec.n, spec.geometry)?;
    let limit_row = row("dirichlet", 0.0, &limit)?;
    let eta = rows
        .iter()
        .filter(|r| r.branch == "accumulating")
        .map(|r| r.l2_k.sqrt())
        .fold(f64::INFINITY, f64::min);
    let gamma: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.branch == "accumulating")
        .map(|r| (r.delta, r.l2_gamma))
        .collect();
    let gamma_fit = fit_loglog(&gamma)?;
    rows.push(limit_row.clone());
    Ok(ConcentrationReport {
        rows,
        eta,
        dirichlet_mass: limit_row.l2_k.sqrt(),
        gamma_fit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoercivityRow {
    pub alpha: f64,
    pub delta: f64,
    pub theta_min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoercivityReport {
    pub rows: Vec<CoercivityRow>,
    pub alpha_star: f64,
    /// `min_δ θ_min(δ, α*)`.
    pub theta: f64,
    /// `θ_min` nondecreasing in α at every δ.
    pub monotone_in_alpha: bool,
}

impl CoercivityReport {
    pub fn passed(&self) -> bool {
        self.theta > 0.0 && self.monotone_in_alpha
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["alpha", "delta", "theta_min"]);
        for r in &self.rows {
            t.push(vec![r.alpha.into(), r.delta.into(), r.theta_min.into()]);
        }
        t
    }
}

/// `θ_min(δ, α)` of `S - T/δ + (α/δ²) M` against `G_δ`, and the first α
/// (in ascending order) whose column stays at or above [`THETA_FLOOR`].
pub fn coercivity_study(
    geometry: DiskGeometry,
    grid: GridSpec,
    m: u32,
    alphas: &[f64],
    deltas: &[f64],
) -> Result<CoercivityReport> {
    validate_deltas(deltas, MAX_SWEEP_DELTA, 1)?;
    if alphas.is_empty() || alphas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("alpha list must be nonempty and increasing".into()));
    }
    let pencil = assemble(m, grid.build(geometry)?)?;
    let mut rows = Vec::with_capacity(alphas.len() * deltas.len());
    for &alpha in alphas {
        for &delta in deltas {
            rows.push(CoercivityRow {
                alpha,
                delta,
                theta_min: pencil.min_coercivity_eigenvalue(delta, alpha)?,
            });
        }
    }
    let nd = deltas.len();
    let column_min = |i: usize| rows[i * nd..(i + 1) * nd].iter().map(|r| r.theta_min).fold(f64::INFINITY, f64::min);
    let star = (0..alphas.len())
        .find(|&i| column_min(i) >= THETA_FLOOR)
        .ok_or(Error::NoCoerciveColumn)?;
    let monotone_in_alpha = (0..nd).all(|j| {
        (1..alphas.len()).all(|i| rows[i * nd + j].theta_min >= rows[(i - 1) * nd + j].theta_min)
    });
    Ok(CoercivityReport {
        alpha_star: alphas[star],
        theta: column_min(star),
        rows,
        monotone_in_alpha,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRow {
    pub delta: f64,
    pub dual_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualStudyReport {
    pub order: usize,
    pub alpha: f64,
    pub rows: Vec<ResidualRow>,
    pub fit: LogLogFit,
}

impl ResidualStudyReport {
    pub fn minimum_slope(&self) -> f64 {
        self.order as f64 + 1.5 - 0.25
    }

    pub fn decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].dual_norm < w[0].dual_norm)
    }

    pub fn passed(&self) -> bool {
        self.fit.slope >= self.minimum_slope() && self.decreasing()
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["delta", "dual_norm"]);
        for r in &self.rows {
            t.push(vec![r.delta.into(), r.dual_norm.into()]);
        }
        t
    }
}

/// Dual norm of the expansion residual over the sweep, with a rate fit.
pub fn residual_study(spec: &SweepSpec) -> Result<ResidualStudyReport> {
    spec.validate()?;
    let grid = spec.grid.build(spec.geometry)?;
    let series = build_series(spec.m, spec.n, grid, spec.order)?;
    let rows = spec
        .deltas
        .iter()
        .map(|&delta| {
            residual_dual_norm(&series, delta, spec.order, spec.alpha).map(|r| ResidualRow {
                delta,
                dual_norm: r.dual_norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.delta, r.dual_norm)).collect();
    let fit = fit_loglog(&points)?;
    Ok(ResidualStudyReport {
        order: spec.order,
        alpha: spec.alpha,
        rows,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_range_syntax() {
        let d = parse_delta_range("0.1:0.0125:log6").unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(d[0], 0.1);
        assert_eq!(*d.last().unwrap(), 0.0125);
        assert!(d.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(parse_delta_range("0.3:0.03:log6").unwrap().len(), 7);
        assert_eq!(parse_delta_range("0.1, 0.05").unwrap(), vec![0.1, 0.05]);
        for bad in ["", "0.1:0.01", "0.1:0.01:6", "0.1:0.01:log0", "a:b:log3", "0:0.1:log2"] {
            assert!(parse_delta_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fit_exact_power_laws() {
        let xs = [0.1, 0.05, 0.02, 0.01];
        let sq: Vec<_> = xs.iter().map(|&x| (x, x * x)).collect();
        let f = fit_loglog(&sq).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.quality - 1.0).abs() < 1e-12);
        let flat: Vec<_> = xs.iter().map(|&x| (x, 3.0)).collect();
        assert!(fit_loglog(&flat).unwrap().slope.abs() < 1e-12);
        let noisy: Vec<_> = (0..10)
            .map(|i| {
                let x = 0.1 * 0.7f64.powi(i);
                (x, x.powi(3) * (1.0 + 0.01 * (i as f64 * 2.3).sin()))
            })
            .collect();
        assert!((fit_loglog(&noisy).unwrap().slope - 3.0).abs() < 0.05);
        assert!(fit_loglog(&sq[..2]).is_err());
        assert!(fit_loglog(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn sweep_validation() {
        let mut s = SweepSpec::new(0, 1, 0, vec![0.1, 0.05, 0.02, 0.01]);
        assert!(s.validate().is_ok());
        s.deltas = vec![0.1, 0.2, 0.05, 0.01];
        assert!(s.validate().is_err());
        s.deltas = vec![0.9, 0.2, 0.05, 0.01];
        assert!(s.validate().is_err());
        s.deltas = vec![0.1, 0.05, 0.02];
        assert!(s.validate().is_err());
    }

    #[test]
    fn small_convergence_sweep() {
        let mut s = SweepSpec::new(0, 1, 1, parse_delta_range("0.1:0.0125:log6").unwrap());
        s.grid.elements = 128;
        let r = convergence_study(&s).unwrap();
        assert!(r.passed(), "{:?}", r.fit);
        assert_eq!(r.table().rows().len(), 6);
    }

    #[test]
    fn surface_single_row() {
        let r = surface_limit_study(DiskGeometry::unit(), &[0], &[0.001]).unwrap();
        assert!((r.rows[0].delta2_lambda + 1.0).abs() <= 5e-3);
        assert!(r.passed());
        assert!(surface_limit_study(DiskGeometry::unit(), &[0], &[0.3]).is_err());
    }
}
