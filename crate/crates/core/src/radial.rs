//! Radial finite elements for one Fourier sector.
//!
//! The sector bilinear forms are
//!
//! ```text
//!   S(v, w) = ∫₀ᴿ (v' w' + m²/r² v w) r dr
//!   M(v, w) = ∫₀ᴿ v w r dr
//!   T(v, w) = R v(R) w(R)
//! ```
//!
//! and the Robin problem in the sector is `(S - T/δ) x = λ M x`. For `m ≥ 1`
//! the origin value is constrained to zero; for `m = 0` it is left free.
//! Degrees of freedom are ordered by position, so linear elements give a
//! tridiagonal band and quadratic ones a pentadiagonal band.

use std::ops::Range;
use std::sync::Arc;

use crate::banded::{self, smallest_eigenpairs, SymBand};
use crate::disk::{Branch, DiskEigenpair, DiskGeometry, FourierMode, Profile, Provenance};
use crate::error::{Error, Result};
use crate::quad::GaussRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementOrder {
    Linear,
    Quadratic,
}

impl ElementOrder {
    pub fn degree(self) -> usize {
        match self {
            ElementOrder::Linear => 1,
            ElementOrder::Quadratic => 2,
        }
    }

    /// Shape functions and their reference derivatives at `xi ∈ [-1, 1]`.
    fn shape(self, xi: f64) -> ([f64; 3], [f64; 3]) {
        match self {
            ElementOrder::Linear => ([0.5 * (1.0 - xi), 0.5 * (1.0 + xi), 0.0], [-0.5, 0.5, 0.0]),
            ElementOrder::Quadratic => (
                [0.5 * xi * (xi - 1.0), 1.0 - xi * xi, 0.5 * xi * (xi + 1.0)],
                [xi - 0.5, -2.0 * xi, xi + 0.5],
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grading {
    Uniform,
    /// `fraction` of the elements are spread uniformly over `[R - width, R]`,
    /// the rest uniformly over `[0, R - width]`.
    BoundaryLayer { width: f64, fraction: f64 },
}

impl Grading {
    pub fn boundary_layer(width: f64) -> Self {
        Grading::BoundaryLayer { width, fraction: 0.5 }
    }
}

/// Element vertices `0 = r_0 < … < r_n = R` and the element order.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    order: ElementOrder,
    grading: Grading,
}

impl RadialGrid {
    pub fn build(geometry: DiskGeometry, elements: usize, order: ElementOrder, grading: Grading) -> Result<Self> {
        let r = geometry.radius();
        if elements == 0 {
            return Err(Error::InvalidParameter("grid needs at least one element".into()));
        }
        let nodes = match grading {
            Grading::Uniform => (0..=elements).map(|i| r * i as f64 / elements as f64).collect(),
            Grading::BoundaryLayer { width, fraction } => {
                if !(width > 0.0 && width < r) {
                    return Err(Error::InvalidParameter(format!(
                        "layer width {width} must lie in (0, {r})"
                    )));
                }
                if !(fraction > 0.0 && fraction < 1.0) || elements < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "layer fraction {fraction} with {elements} elements leaves an empty region"
                    )));
                }
                let layer = ((fraction * elements as f64).ceil() as usize).clamp(1, elements - 1);
                let core = elements - layer;
                let split = r - width;
                let mut nodes: Vec<f64> = (0..core).map(|i| split * i as f64 / core as f64).collect();
                nodes.extend((0..=layer).map(|i| split + width * i as f64 / layer as f64));
                *nodes.last_mut().expect("nonempty") = r;
                nodes
            }
        };
        Self::from_parts(nodes, order, grading)
    }

    pub fn from_nodes(nodes: Vec<f64>, order: ElementOrder) -> Result<Self> {
        Self::from_parts(nodes, order, Grading::Uniform)
    }

    fn from_parts(nodes: Vec<f64>, order: ElementOrder, grading: Grading) -> Result<Self> {
        if nodes.len() < 2 || nodes[0] != 0.0 {
            return Err(Error::InvalidParameter("grid must start at r = 0 with one element".into()));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) || !nodes.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameter("grid nodes must increase strictly".into()));
        }
        Ok(Self { nodes, order, grading })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn order(&self) -> ElementOrder {
        self.order
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn radius(&self) -> f64 {
        *self.nodes.last().expect("nonempty")
    }

    pub fn element_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn dof_count(&self) -> usize {
        self.order.degree() * self.element_count() + 1
    }

    pub fn boundary_dof(&self) -> usize {
        self.dof_count() - 1
    }

    /// Radial position of a degree of freedom.
    pub fn dof_position(&self, dof: usize) -> f64 {
        let p = self.order.degree();
        let e = dof / p;
        let local = dof % p;
        if local == 0 {
            self.nodes[e]
        } else {
            0.5 * (self.nodes[e] + self.nodes[e + 1])
        }
    }

    pub fn smallest_boundary_element(&self) -> f64 {
        let n = self.nodes.len();
        self.nodes[n - 1] - self.nodes[n - 2]
    }

    fn element_dofs(&self, e: usize) -> Range<usize> {
        let p = self.order.degree();
        (p * e)..(p * e + p + 1)
    }

    fn element_of(&self, r: f64) -> usize {
        match self.nodes.binary_search_by(|x| x.total_cmp(&r)) {
            Ok(i) => i.min(self.element_count() - 1),
            Err(i) => i.saturating_sub(1).min(self.element_count() - 1),
        }
    }

    fn quadrature(&self) -> GaussRule {
        GaussRule::new(self.order.degree() + 3)
    }

    /// The vertex closest to `rho`.
    pub fn snap(&self, rho: f64) -> f64 {
        self.nodes[self.snap_index(rho)]
    }

    fn snap_index(&self, rho: f64) -> usize {
        let mut best = 0;
        for (i, x) in self.nodes.iter().enumerate() {
            if (x - rho).abs() < (self.nodes[best] - rho).abs() {
                best = i;
            }
        }
        best
    }
}

/// Nodal coefficients of a finite-element function on a grid.
#[derive(Debug, Clone)]
pub struct RadialFunction {
    grid: Arc<RadialGrid>,
    coeffs: Vec<f64>,
}

/// Squared norms of a [`RadialFunction`] computed element by element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileNorms {
    pub l2_omega: f64,
    pub l2_gamma: f64,
    pub l2_k: f64,
    /// `∫ (v'² + m² v²/r²) r dr`.
    pub grad: f64,
}

impl RadialFunction {
    pub fn new(grid: Arc<RadialGrid>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != grid.dof_count() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for {} degrees of freedom",
                coeffs.len(),
                grid.dof_count()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn boundary_value(&self) -> f64 {
        self.coeffs[self.grid.boundary_dof()]
    }

    pub fn eval_with_deriv(&self, r: f64) -> (f64, f64) {
        let e = self.grid.element_of(r);
        let (a, b) = (self.grid.nodes[e], self.grid.nodes[e + 1]);
        let xi = (2.0 * r - a - b) / (b - a);
        let (n, dn) = self.grid.order.shape(xi);
        let jac = 2.0 / (b - a);
        let mut v = 0.0;
        let mut dv = 0.0;
        for (local, dof) in self.grid.element_dofs(e).enumerate() {
            v += n[local] * self.coeffs[dof];
            dv += dn[local] * jac * self.coeffs[dof];
        }
        (v, dv)
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.eval_with_deriv(r).0
    }

    pub fn norms_squared(&self, m: u32, rho: f64) -> ProfileNorms {
        let rule = self.grid.quadrature();
        let k_end = self.grid.snap_index(rho);
        let m2 = (m as f64).powi(2);
        let mut out = ProfileNorms {
            l2_omega: 0.0,
            l2_gamma: self.grid.radius() * self.boundary_value().powi(2),
            l2_k: 0.0,
            grad: 0.0,
        };
        for e in 0..self.grid.element_count() {
            let (a, b) = (self.grid.nodes[e], self.grid.nodes[e + 1]);
            for (r, w) in rule.mapped(a, b) {
                let (v, dv) = self.eval_with_deriv(r);
                let mass = w * v * v * r;
                out.l2_omega += mass;
                if e < k_end {
                    out.l2_k += mass;
                }
                out.grad += w * (dv * dv * r + m2 * v * v / r);
            }
        }
        out
    }

    /// Flip the sign so the first coefficient of largest magnitude is positive.
    pub fn fix_sign(&mut self) {
        let mut best = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.abs() > self.coeffs[best].abs() * (1.0 + 1e-12) {
                best = i;
            }
        }
        if self.coeffs[best] < 0.0 {
            for c in &mut self.coeffs {
                *c = -*c;
            }
        }
    }
}

/// Stiffness, mass and trace matrices of one sector on one grid.
#[derive(Debug, Clone)]
pub struct SectorPencil {
    grid: Arc<RadialGrid>,
    mode: FourierMode,
    stiffness: SymBand,
    mass: SymBand,
    delta: Option<f64>,
}

/// Quadratic-form norms of a discrete function, see [`SectorPencil::norms`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteNorms {
    pub l2_omega: f64,
    pub l2_gamma: f64,
    pub l2_k: f64,
    pub h1_delta: f64,
}

/// Assemble the sector matrices on all degrees of freedom.
pub fn assemble(m: u32, grid: Arc<RadialGrid>) -> Result<SectorPencil> {
    let ndof = grid.dof_count();
    let bw = grid.order.degree();
    let mut stiffness = SymBand::zeros(ndof, bw);
    let mut mass = SymBand::zeros(ndof, bw);
    let rule = grid.quadrature();
    let m2 = (m as f64).powi(2);
    for e in 0..grid.element_count() {
        let (a, b) = (grid.nodes[e], grid.nodes[e + 1]);
        let jac = 2.0 / (b - a);
        let dofs = grid.element_dofs(e);
        let nloc = dofs.len();
        for (xi, w) in rule.nodes.iter().zip(&rule.weights) {
            let r = 0.5 * (a + b) + 0.5 * (b - a) * xi;
            let wr = 0.5 * (b - a) * w;
            let (n, dn) = grid.order.shape(*xi);
            for i in 0..nloc {
                for j in 0..=i {
                    let gi = dofs.start + i;
                    let gj = dofs.start + j;
                    let k = (dn[i] * jac) * (dn[j] * jac) * r + m2 * n[i] * n[j] / r;
                    stiffness.add(gi, gj, wr * k);
                    mass.add(gi, gj, wr * n[i] * n[j] * r);
                }
            }
        }
    }
    if !(0..ndof).all(|i| stiffness.get(i, i).is_finite()) {
        return Err(Error::Quadrature("stiffness assembly produced non-finite entries".into()));
    }
    Ok(SectorPencil {
        grid,
        mode: FourierMode(m),
        stiffness,
        mass,
        delta: None,
    })
}

impl SectorPencil {
    pub fn with_delta(&self, delta: f64) -> Result<SectorPencil> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter(format!("delta = {delta} must be > 0")));
        }
        Ok(SectorPencil {
            delta: Some(delta),
            ..self.clone()
        })
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn mode(&self) -> FourierMode {
        self.mode
    }

    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    pub fn radius(&self) -> f64 {
        self.grid.radius()
    }

    /// Full stiffness matrix (origin row included).
    pub fn stiffness(&self) -> &SymBand {
        &self.stiffness
    }

    pub fn mass(&self) -> &SymBand {
        &self.mass
    }

    /// The rank-one trace matrix `R e_b e_bᵀ` on all degrees of freedom.
    pub fn trace_matrix(&self) -> SymBand {
        let mut t = SymBand::zeros(self.grid.dof_count(), self.stiffness.bandwidth());
        let b = self.grid.boundary_dof();
        t.add(b, b, self.radius());
        t
    }

    /// Unknowns of the problem: the origin is dropped for `m ≥ 1`, the
    /// boundary for Dirichlet problems.
    pub fn free_range(&self, dirichlet: bool) -> Range<usize> {
        let start = usize::from(self.mode.m() >= 1);
        let end = self.grid.dof_count() - usize::from(dirichlet);
        start..end
    }

    pub fn restrict(&self, f: &RadialFunction, dirichlet: bool) -> Vec<f64> {
        f.coeffs[self.free_range(dirichlet)].to_vec()
    }

    pub fn extend(&self, values: &[f64], dirichlet: bool) -> RadialFunction {
        let range = self.free_range(dirichlet);
        let mut coeffs = vec![0.0; self.grid.dof_count()];
        coeffs[range].copy_from_slice(values);
        RadialFunction {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// `S - T/δ` on the Robin unknowns.
    pub fn robin_operator(&self, delta: f64) -> SymBand {
        let range = self.free_range(false);
        let mut a = self.stiffness.principal(range.clone());
        let b = range.len() - 1;
        a.add(b, b, -self.radius() / delta);
        a
    }

    pub fn free_stiffness(&self, dirichlet: bool) -> SymBand {
        self.stiffness.principal(self.free_range(dirichlet))
    }

    pub fn free_mass(&self, dirichlet: bool) -> SymBand {
        self.mass.principal(self.free_range(dirichlet))
    }

    fn require_delta(&self) -> Result<f64> {
        self.delta
            .ok_or_else(|| Error::InvalidParameter("pencil has no delta; call with_delta".into()))
    }

    fn pairs_from(&self, raw: Vec<banded::PencilPair>, dirichlet: bool) -> Vec<DiskEigenpair> {
        let geometry = DiskGeometry::new(self.radius()).expect("grid radius is positive");
        raw.into_iter()
            .map(|p| {
                let mut f = self.extend(&p.vector, dirichlet);
                f.fix_sign();
                let branch = if dirichlet {
                    Branch::Dirichlet
                } else if p.value < 0.0 {
                    Branch::Surface
                } else {
                    Branch::Oscillatory
                };
                DiskEigenpair {
                    lambda: p.value,
                    mode: self.mode,
                    branch,
                    provenance: Provenance::DiscretePencil,
                    delta: if dirichlet { None } else { self.delta },
                    geometry,
                    profile: Profile::Discrete(f),
                }
            })
            .collect()
    }

    /// The `count` smallest eigenpairs of `(S - T/δ) x = λ M x`.
    pub fn solve_robin_discrete(&self, count: usize) -> Result<Vec<DiskEigenpair>> {
        let delta = self.require_delta()?;
        let h = self.grid.smallest_boundary_element();
        if delta < 5.0 * h {
            log::warn!(
                "delta = {delta} is under-resolved by boundary elements of width {h}; \
                 surface eigenvalues will be inaccurate"
            );
        }
        let a = self.robin_operator(delta);
        let m = self.free_mass(false);
        banded::require_positive_definite(&m, "mass matrix")?;
        let raw = smallest_eigenpairs(&a, &m, count)?;
        Ok(self.pairs_from(raw, false))
    }

    /// The `count` smallest Dirichlet eigenpairs (boundary value constrained to zero).
    pub fn solve_dirichlet_discrete(&self, count: usize) -> Result<Vec<DiskEigenpair>> {
        let a = self.free_stiffness(true);
        let m = self.free_mass(true);
        banded::require_positive_definite(&m, "mass matrix")?;
        let raw = smallest_eigenpairs(&a, &m, count)?;
        Ok(self.pairs_from(raw, true))
    }

    /// Gram matrix of the `H¹_δ` norm, `G_δ = S + δ⁻² M`, on the Robin unknowns.
    pub fn h1_delta_gram(&self, delta: f64) -> SymBand {
        self.free_stiffness(false)
            .combine(delta.powi(-2), &self.free_mass(false))
    }

    /// Smallest eigenvalue of the shifted form `S - T/δ + (α/δ²) M` relative to `G_δ`.
    pub fn min_coercivity_eigenvalue(&self, delta: f64, alpha: f64) -> Result<f64> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must be >= 0")));
        }
        let form = self
            .robin_operator(delta)
            .combine(alpha / (delta * delta), &self.free_mass(false));
        let gram = self.h1_delta_gram(delta);
        Ok(smallest_eigenpairs(&form, &gram, 1)?[0].value)
    }

    /// Discrete best constant in `‖u‖²_Γ ≤ C (‖∇u‖ ‖u‖ + ‖u‖²)`.
    ///
    /// Uses `‖∇u‖ ‖u‖ = min_t ½ (t ‖∇u‖² + ‖u‖² / t)`, so the constant is
    /// `sup_t R (P(t)⁻¹)_{bb}` with `P(t) = ½ t S + (½/t + 1) M`. The supremum
    /// over `log t ∈ [-8, 8]` is located by a scan and refined by golden section.
    pub fn trace_constant(&self) -> Result<f64> {
        let s = self.free_stiffness(false);
        let m = self.free_mass(false);
        let b = s.dim() - 1;
        let radius = self.radius();
        let value = |log_t: f64| -> Result<f64> {
            let t = log_t.exp();
            let p = s.scaled(0.5 * t).combine(0.5 / t + 1.0, &m);
            banded::rank_one_max_eigenvalue(&p, b, radius)
        };
        let (lo, hi) = (-8.0, 8.0);
        let samples = 32;
        let step = (hi - lo) / samples as f64;
        let mut best = (lo, value(lo)?);
        for i in 1..=samples {
            let x = lo + step * i as f64;
            let v = value(x)?;
            if v > best.1 {
                best = (x, v);
            }
        }
        let mut a = (best.0 - step).max(lo);
        let mut c = (best.0 + step).min(hi);
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = c - phi * (c - a);
        let mut x2 = a + phi * (c - a);
        let mut f1 = value(x1)?;
        let mut f2 = value(x2)?;
        while c - a > 1e-6 {
            if f1 < f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (c - a);
                f2 = value(x2)?;
            } else {
                c = x2;
                x2 = x1;
                f2 = f1;
                x1 = c - phi * (c - a);
                f1 = value(x1)?;
            }
        }
        Ok(best.1.max(f1).max(f2))
    }

    /// Mass matrix restricted to the elements inside the disk of radius `rho`
    /// (snapped to the nearest vertex), on all degrees of freedom.
    fn inner_mass(&self, rho: f64) -> SymBand {
        let end = self.grid.snap_index(rho);
        let ndof = self.grid.dof_count();
        let mut out = SymBand::zeros(ndof, self.mass.bandwidth());
        let rule = self.grid.quadrature();
        for e in 0..end {
            let (a, b) = (self.grid.nodes[e], self.grid.nodes[e + 1]);
            let dofs = self.grid.element_dofs(e);
            for (xi, w) in rule.nodes.iter().zip(&rule.weights) {
                let r = 0.5 * (a + b) + 0.5 * (b - a) * xi;
                let wr = 0.5 * (b - a) * w;
                let (n, _) = self.grid.order.shape(*xi);
                for i in 0..dofs.len() {
                    for j in 0..=i {
                        out.add(dofs.start + i, dofs.start + j, wr * n[i] * n[j] * r);
                    }
                }
            }
        }
        out
    }

    /// `‖u‖²_{L²(Ω)}`, `‖u‖²_{L²(Γ)}`, `‖u‖²_{L²(K)}` and `‖u‖²_{H¹_δ}` as
    /// quadratic forms of the assembled matrices.
    pub fn norms(&self, u: &RadialFunction, delta: f64, rho: f64) -> DiscreteNorms {
        let c = &u.coeffs;
        let l2_omega = self.mass.form(c, c);
        DiscreteNorms {
            l2_omega,
            l2_gamma: self.radius() * u.boundary_value().powi(2),
            l2_k: self.inner_mass(rho).form(c, c),
            h1_delta: self.stiffness.form(c, c) + l2_omega / (delta * delta),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_j_zero;

    fn grid(n: usize, order: ElementOrder) -> Arc<RadialGrid> {
        Arc::new(RadialGrid::build(DiskGeometry::unit(), n, order, Grading::Uniform).unwrap())
    }

    #[test]
    fn uniform_nodes() {
        let g = grid(4, ElementOrder::Linear);
        assert_eq!(g.nodes(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(grid(4, ElementOrder::Quadratic).dof_count(), 9);
    }

    #[test]
    fn graded_grid_packs_boundary() {
        let g = RadialGrid::build(DiskGeometry::unit(), 64, ElementOrder::Quadratic, Grading::boundary_layer(0.01))
            .unwrap();
        let inside = g.nodes().iter().filter(|&&r| r >= 0.99).count();
        assert!(inside >= 64 / 3);
        assert_eq!(*g.nodes().last().unwrap(), 1.0);
        assert!(RadialGrid::build(DiskGeometry::unit(), 8, ElementOrder::Linear, Grading::boundary_layer(1.5)).is_err());
        assert!(RadialGrid::from_nodes(vec![0.0, 0.5, 0.5, 1.0], ElementOrder::Linear).is_err());
    }

    #[test]
    fn linear_mass_matches_exact_integrals() {
        let g = grid(4, ElementOrder::Linear);
        let p = assemble(0, g).unwrap();
        let h = 0.25;
        for e in 0..4 {
            let a = e as f64 * h;
            let b = a + h;
            // ∫ φ_a φ_b r dr on [a, b] = h (a + b) / 12
            let off = p.mass().get(e + 1, e);
            assert!((off - h * (a + b) / 12.0).abs() < 1e-15);
        }
        // interior diagonal gets h(a + 3b)/12 + h(3b' + a')/12 from both sides
        let diag = p.mass().get(2, 2);
        let expect = h * (0.25 + 3.0 * 0.5) / 12.0 + h * (3.0 * 0.5 + 0.75) / 12.0;
        assert!((diag - expect).abs() < 1e-15);
    }

    #[test]
    fn constants_in_kernel_for_m0() {
        let p = assemble(0, grid(16, ElementOrder::Quadratic)).unwrap();
        let ones = vec![1.0; p.grid().dof_count()];
        let s1 = p.stiffness().matvec(&ones);
        assert!(s1.iter().all(|v| v.abs() < 1e-13));
        let t = p.trace_matrix();
        let nonzero = (0..t.dim())
            .flat_map(|i| (0..t.dim()).map(move |j| (i, j)))
            .filter(|&(i, j)| t.get(i, j) != 0.0)
            .count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn gram_definition() {
        let p = assemble(0, grid(16, ElementOrder::Quadratic)).unwrap();
        let g1 = p.h1_delta_gram(1.0);
        let s_plus_m = p.free_stiffness(false).combine(1.0, &p.free_mass(false));
        assert_eq!(g1, s_plus_m);
        let ones = vec![1.0; p.grid().dof_count()];
        let delta = 0.1;
        let g = p.h1_delta_gram(delta);
        let val = g.form(&ones, &ones);
        let mass = p.mass().form(&ones, &ones);
        assert!((val - mass / (delta * delta)).abs() < 1e-10 * val);
    }

    #[test]
    fn dirichlet_discrete_accuracy() {
        let p = assemble(0, grid(512, ElementOrder::Quadratic)).unwrap();
        let pairs = p.solve_dirichlet_discrete(3).unwrap();
        for (n, pair) in pairs.iter().enumerate() {
            let exact = bessel_j_zero(0, n as u32 + 1).unwrap().powi(2);
            assert!(((pair.lambda - exact) / exact).abs() < 1e-8, "{} vs {}", pair.lambda, exact);
        }
    }

    #[test]
    fn coercivity_monotone_in_alpha() {
        let g = Arc::new(
            RadialGrid::build(DiskGeometry::unit(), 128, ElementOrder::Quadratic, Grading::boundary_layer(0.2))
                .unwrap(),
        );
        let p = assemble(0, g).unwrap();
        let delta = 0.05;
        let thetas: Vec<f64> = [0.0, 1.0, 2.0, 4.0]
            .iter()
            .map(|&a| p.min_coercivity_eigenvalue(delta, a).unwrap())
            .collect();
        assert!(thetas[0] < 0.0);
        for w in thetas.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn discrete_robin_matches_secular_roots() {
        let delta = 0.02;
        let g = Arc::new(
            RadialGrid::build(DiskGeometry::unit(), 256, ElementOrder::Quadratic, Grading::boundary_layer(0.2))
                .unwrap(),
        );
        for m in [0, 2] {
            let p = assemble(m, g.clone()).unwrap().with_delta(delta).unwrap();
            let discrete = p.solve_robin_discrete(3).unwrap();
            let exact = crate::disk::robin_sector_spectrum(m, DiskGeometry::unit(), delta, 3).unwrap();
            assert_eq!(discrete[0].branch, Branch::Surface);
            for (d, e) in discrete.iter().zip(&exact) {
                assert!(((d.lambda - e.lambda) / e.lambda).abs() < 1e-4, "m={m}: {} vs {}", d.lambda, e.lambda);
            }
            let f = match &discrete[0].profile {
                Profile::Discrete(f) => f.clone(),
                _ => unreachable!(),
            };
            let n = p.norms(&f, delta, 0.5);
            assert!((n.l2_omega - 1.0).abs() < 1e-10);
            assert!(f.boundary_value() > 0.0);
            let direct = f.norms_squared(m, 0.5);
            assert!((direct.l2_omega - n.l2_omega).abs() < 1e-12);
            assert!((direct.l2_k - n.l2_k).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_constant_is_at_least_constant_ratio() {
        let p = assemble(0, grid(64, ElementOrder::Quadratic)).unwrap();
        let c = p.trace_constant().unwrap();
        let floor = 2.0 / (1.0 + 0.5 * (-8f64).exp());
        assert!(c >= floor - 1e-12 && c.is_finite(), "{c}");
    }

    #[test]
    fn robin_requires_delta() {
        let p = assemble(0, grid(16, ElementOrder::Linear)).unwrap();
        assert!(p.solve_robin_discrete(1).is_err());
        assert!(p.with_delta(-1.0).is_err());
    }
}
