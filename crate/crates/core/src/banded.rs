//! Symmetric banded matrices, LDLᵀ factorization and the symmetric-definite
//! pencil eigensolver built on it.
//!
//! Eigenvalues of `A x = λ B x` (B positive definite) are located by inertia
//! counting: by Sylvester's law the number of negative pivots of `A - σB`
//! equals the number of eigenvalues below `σ`. Each wanted eigenvalue is
//! bisected to full precision and its vector is recovered by shifted inverse
//! iteration, then polished with the Rayleigh quotient.

use crate::error::{Error, Result};

/// Symmetric matrix with half-bandwidth `bw`, lower band stored row-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBand {
    n: usize,
    bw: usize,
    // data[i * (bw + 1) + d] = A[i][i - d]
    data: Vec<f64>,
}

impl SymBand {
    pub fn zeros(n: usize, bw: usize) -> Self {
        Self {
            n,
            bw,
            data: vec![0.0; n * (bw + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        if d > self.bw {
            0.0
        } else {
            self.data[hi * (self.bw + 1) + d]
        }
    }

    /// Adds `v` to entry `(i, j)` and, implicitly, `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        assert!(d <= self.bw, "entry ({i}, {j}) outside band {}", self.bw);
        self.data[hi * (self.bw + 1) + d] += v;
    }

    /// `self + alpha * other` (same shape).
    pub fn combine(&self, alpha: f64, other: &SymBand) -> SymBand {
        assert_eq!((self.n, self.bw), (other.n, other.bw));
        SymBand {
            n: self.n,
            bw: self.bw,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + alpha * b)
                .collect(),
        }
    }

    pub fn scaled(&self, alpha: f64) -> SymBand {
        SymBand {
            n: self.n,
            bw: self.bw,
            data: self.data.iter().map(|a| alpha * a).collect(),
        }
    }

    /// Principal submatrix on the contiguous index range `range`.
    pub fn principal(&self, range: std::ops::Range<usize>) -> SymBand {
        let mut out = SymBand::zeros(range.len(), self.bw);
        for (i_new, i) in range.clone().enumerate() {
            for d in 0..=self.bw.min(i_new) {
                out.data[i_new * (self.bw + 1) + d] = self.data[i * (self.bw + 1) + d];
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            y[i] += self.data[i * (self.bw + 1)] * x[i];
            for d in 1..=self.bw.min(i) {
                let a = self.data[i * (self.bw + 1) + d];
                y[i] += a * x[i - d];
                y[i - d] += a * x[i];
            }
        }
        y
    }

    /// `xᵀ A y`.
    pub fn form(&self, x: &[f64], y: &[f64]) -> f64 {
        dot(x, &self.matvec(y))
    }

    /// Dense copy, mainly for cross-checks.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// LDLᵀ factorization without pivoting.
    ///
    /// Exactly zero pivots are nudged to a tiny value of the matrix scale, which
    /// keeps inertia counts well defined when a shift lands on an eigenvalue.
    pub fn ldlt(&self) -> Ldlt {
        let n = self.n;
        let bw = self.bw;
        let w = bw + 1;
        let scale = self.data.iter().fold(0.0f64, |m, a| m.max(a.abs())).max(f64::MIN_POSITIVE);
        let tiny = scale * f64::EPSILON * f64::EPSILON;
        // l[i * w + d] = L[i][i - d] for d >= 1
        let mut l = vec![0.0; n * w];
        let mut diag = vec![0.0; n];
        for j in 0..n {
            let mut dj = self.data[j * w];
            for d in 1..=bw.min(j) {
                let k = j - d;
                let ljk = l[j * w + d];
                dj -= ljk * ljk * diag[k];
            }
            if dj == 0.0 {
                dj = tiny;
            }
            diag[j] = dj;
            for i in (j + 1)..n.min(j + bw + 1) {
                let mut v = self.data[i * w + (i - j)];
                for d in (i - j + 1)..=bw.min(i) {
                    let k = i - d;
                    // k < j and within j's band
                    if j - k <= bw {
                        v -= l[i * w + d] * l[j * w + (j - k)] * diag[k];
                    }
                }
                l[i * w + (i - j)] = v / dj;
            }
        }
        Ldlt { n, bw, l, diag }
    }
}

/// Banded LDLᵀ factors.
#[derive(Debug, Clone)]
pub struct Ldlt {
    n: usize,
    bw: usize,
    l: Vec<f64>,
    diag: Vec<f64>,
}

impl Ldlt {
    /// Number of negative pivots (the negative inertia of the matrix).
    pub fn negative_count(&self) -> usize {
        self.diag.iter().filter(|&&d| d < 0.0).count()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.diag.iter().all(|&d| d > 0.0)
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let w = self.bw + 1;
        let mut x = b.to_vec();
        for i in 0..self.n {
            for d in 1..=self.bw.min(i) {
                x[i] -= self.l[i * w + d] * x[i - d];
            }
        }
        for i in 0..self.n {
            x[i] /= self.diag[i];
        }
        for i in (0..self.n).rev() {
            for d in 1..=self.bw.min(self.n - 1 - i) {
                x[i] -= self.l[(i + d) * w + d] * x[i + d];
            }
        }
        x
    }
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Cholesky-style check that `b` is positive definite.
pub fn require_positive_definite(b: &SymBand, what: &str) -> Result<Ldlt> {
    let f = b.ldlt();
    if f.is_positive_definite() {
        Ok(f)
    } else {
        Err(Error::Factorization(format!("{what} is not positive definite")))
    }
}

/// One eigenpair of a symmetric-definite pencil; the vector is B-normalized.
#[derive(Debug, Clone)]
pub struct PencilPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

fn count_below(a: &SymBand, b: &SymBand, sigma: f64) -> usize {
    a.combine(-sigma, b).ldlt().negative_count()
}

/// The `count` smallest eigenpairs of `A x = λ B x`, ascending.
pub fn smallest_eigenpairs(a: &SymBand, b: &SymBand, count: usize) -> Result<Vec<PencilPair>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::Eigensolver("pencil dimensions differ".into()));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    if count > n {
        return Err(Error::Eigensolver(format!("asked for {count} of {n} eigenvalues")));
    }
    require_positive_definite(b, "pencil mass matrix")?;

    let ratio_scale = (0..n)
        .map(|i| (a.get(i, i) / b.get(i, i)).abs())
        .fold(1.0f64, f64::max);
    let mut lo = -ratio_scale;
    let mut guard = 0;
    while count_below(a, b, lo) > 0 {
        lo *= 4.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::Eigensolver("no lower spectral bound".into()));
        }
    }
    let mut hi = ratio_scale;
    guard = 0;
    while count_below(a, b, hi) < count {
        hi = 4.0 * hi.abs().max(1.0);
        guard += 1;
        if guard > 200 {
            return Err(Error::Eigensolver("no upper spectral bound".into()));
        }
    }

    let mut pairs: Vec<PencilPair> = Vec::with_capacity(count);
    for index in 0..count {
        // Invariant: count_below(left) <= index < count_below(right).
        let mut left = pairs.last().map_or(lo, |p| p.value - 1e-12 * p.value.abs().max(1.0));
        if count_below(a, b, left) > index {
            left = lo;
        }
        let mut right = hi;
        for _ in 0..200 {
            let mid = 0.5 * (left + right);
            if mid <= left || mid >= right {
                break;
            }
            if count_below(a, b, mid) > index {
                right = mid;
            } else {
                left = mid;
            }
            if right - left <= 4.0 * f64::EPSILON * left.abs().max(right.abs()) {
                break;
            }
        }
        let estimate = 0.5 * (left + right);
        let pair = inverse_iteration(a, b, estimate, &pairs)?;
        pairs.push(pair);
    }
    Ok(pairs)
}

fn b_orthonormalize(b: &SymBand, x: &mut [f64], against: &[PencilPair]) -> Result<()> {
    for p in against {
        let c = b.form(&p.vector, x);
        for (xi, vi) in x.iter_mut().zip(&p.vector) {
            *xi -= c * vi;
        }
    }
    let norm = b.form(x, x).sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::Eigensolver("inverse iteration collapsed".into()));
    }
    for xi in x.iter_mut() {
        *xi /= norm;
    }
    Ok(())
}

fn inverse_iteration(a: &SymBand, b: &SymBand, estimate: f64, found: &[PencilPair]) -> Result<PencilPair> {
    let n = a.dim();
    let shift = estimate - 1e-10 * estimate.abs().max(1e-3);
    let factors = a.combine(-shift, b).ldlt();
    let mut x: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * ((i as f64) * 0.7548776662).sin())
        .collect();
    b_orthonormalize(b, &mut x, found)?;
    for _ in 0..4 {
        let mut y = factors.solve(&b.matvec(&x));
        b_orthonormalize(b, &mut y, found)?;
        x = y;
    }
    let value = a.form(&x, &x);
    let ax = a.matvec(&x);
    let bx = b.matvec(&x);
    let residual = ax
        .iter()
        .zip(&bx)
        .map(|(p, q)| (p - value * q).powi(2))
        .sum::<f64>()
        .sqrt();
    let scale = dot(&ax, &ax).sqrt().max(value.abs() * dot(&bx, &bx).sqrt()).max(f64::MIN_POSITIVE);
    if !(residual <= 1e-8 * scale) {
        return Err(Error::Eigensolver(format!(
            "eigenvector near {estimate} did not converge (residual {residual:e})"
        )));
    }
    Ok(PencilPair { value, vector: x })
}

/// Largest eigenvalue of `c e_k e_kᵀ` relative to the SPD matrix `p`, i.e. `c (P⁻¹)_{kk}`.
pub fn rank_one_max_eigenvalue(p: &SymBand, k: usize, c: f64) -> Result<f64> {
    let f = require_positive_definite(p, "trace pencil")?;
    let mut e = vec![0.0; p.dim()];
    e[k] = 1.0;
    Ok(c * f.solve(&e)[k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SymmetricEigen};

    fn laplacian(n: usize) -> SymBand {
        let mut a = SymBand::zeros(n, 1);
        for i in 0..n {
            a.add(i, i, 2.0);
            if i + 1 < n {
                a.add(i + 1, i, -1.0);
            }
        }
        a
    }

    fn penta(n: usize) -> (SymBand, SymBand) {
        let mut a = SymBand::zeros(n, 2);
        let mut b = SymBand::zeros(n, 2);
        for i in 0..n {
            a.add(i, i, 3.0 + (i as f64).sin());
            b.add(i, i, 2.0 + 0.1 * (i as f64).cos());
            if i + 1 < n {
                a.add(i + 1, i, -1.2);
                b.add(i + 1, i, 0.4);
            }
            if i + 2 < n {
                a.add(i + 2, i, 0.3 * ((i % 3) as f64 - 1.0));
                b.add(i + 2, i, -0.1);
            }
        }
        (a, b)
    }

    #[test]
    fn ldlt_solves() {
        let (a, b) = penta(30);
        let m = a.combine(2.0, &b);
        let rhs: Vec<f64> = (0..30).map(|i| (i as f64).sqrt()).collect();
        let x = m.ldlt().solve(&rhs);
        let back = m.matvec(&x);
        for (p, q) in back.iter().zip(&rhs) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn inertia_matches_laplacian_spectrum() {
        let n = 20;
        let a = laplacian(n);
        let eig = |k: usize| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
        for k in 1..n {
            let sigma = 0.5 * (eig(k) + eig(k + 1));
            assert_eq!(a.combine(-sigma, &identity(n)).ldlt().negative_count(), k);
        }
    }

    fn identity(n: usize) -> SymBand {
        let mut b = SymBand::zeros(n, 1);
        for i in 0..n {
            b.add(i, i, 1.0);
        }
        b
    }

    #[test]
    fn pencil_matches_dense_reduction() {
        let (a, b) = penta(40);
        let pairs = smallest_eigenpairs(&a, &b, 6).unwrap();
        let l = b.to_dense().cholesky().unwrap().l();
        let linv = l.clone().try_inverse().unwrap();
        let c: DMatrix<f64> = &linv * a.to_dense() * linv.transpose();
        let mut dense: Vec<f64> = SymmetricEigen::new(c).eigenvalues.iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        for (p, d) in pairs.iter().zip(&dense) {
            assert!((p.value - d).abs() < 1e-12 * d.abs().max(1.0), "{} vs {}", p.value, d);
        }
        for (i, p) in pairs.iter().enumerate() {
            for (j, q) in pairs.iter().enumerate() {
                let g = b.form(&p.vector, &q.vector);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn principal_submatrix() {
        let (a, _) = penta(10);
        let s = a.principal(2..7);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(s.get(i, j), a.get(i + 2, j + 2));
            }
        }
    }
}
