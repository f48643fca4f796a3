//! Closed-form Robin and Dirichlet spectra of the disk, one Fourier sector at a time.
//!
//! In sector `m` an eigenfunction is `v(r) Φ_m(θ)` with `Φ_m` orthonormal on the
//! circle, so `‖u‖²_{L²(Ω)} = ∫₀ᴿ v² r dr` and `∫_Γ u w ds = R v(R) w(R)`.
//! The Robin condition `∂_ν u = u / δ` then reads
//!
//! ```text
//!   k J_m'(kR) - J_m(kR) / δ = 0        λ = k²  > 0   (oscillatory)
//!   s I_m'(sR) - I_m(sR) / δ = 0        λ = -s² < 0   (surface)
//! ```
//!
//! With `x = kR`, the accumulating root next to the Dirichlet value
//! `(j_{m,n}/R)²` is the unique root of `x J_m'(x)/J_m(x) = R/δ` in
//! `(j_{m,n}, j_{m,n+1})`: the log-derivative falls from `+∞` to `-∞` there.
//! The surface root exists iff `R/δ > m` because `z I_m'(z)/I_m(z)` increases
//! from `m`.

use crate::error::{Error, Result};
use crate::quad;
use crate::radial::RadialFunction;
use crate::roots::{count_sign_changes, safeguarded_newton};
use crate::specfun::{bessel_i_scaled_with_deriv, bessel_j_with_deriv, bessel_j_zero};

/// Secular residuals of returned eigenpairs stay below this (relative) bound.
pub const SECULAR_TOL: f64 = 1e-10;

/// Number of scan intervals used to validate brackets.
pub const BRACKET_SCAN: usize = 64;

const QUAD_REL_TOL: f64 = 1e-13;

/// The solid disk of radius `R` centred at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskGeometry {
    radius: f64,
}

impl DiskGeometry {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter(format!("disk radius {radius} must be > 0")));
        }
        Ok(Self { radius })
    }

    pub fn unit() -> Self {
        Self { radius: 1.0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Circumference of Γ.
    pub fn boundary_length(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.radius
    }
}

/// Angular wavenumber `m` of the sector `span{v(r) Φ_m(θ)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourierMode(pub u32);

impl FourierMode {
    pub fn m(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `λ > 0`, `J_m` profile.
    Oscillatory,
    /// `λ < 0`, `I_m` profile concentrated in a layer of width `~δ`.
    Surface,
    /// The `δ → 0` limit, `v(R) = 0`.
    Dirichlet,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Oscillatory => "oscillatory",
            Branch::Surface => "surface",
            Branch::Dirichlet => "dirichlet",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    SecularRoot,
    DiscretePencil,
}

/// Radial factor `v(r)` of an eigenfunction.
#[derive(Debug, Clone)]
pub enum Profile {
    /// `v(r) = c J_m(k r)`.
    Bessel { wavenumber: f64, coefficient: f64 },
    /// `v(r) = v(R) I_m(s r) / I_m(s R)`, evaluated through scaled ratios.
    ModifiedBessel { decay: f64, boundary_value: f64 },
    /// Finite-element nodal representation.
    Discrete(RadialFunction),
}

/// One eigenvalue of a sector with its L²(Ω)-normalized radial profile.
#[derive(Debug, Clone)]
pub struct DiskEigenpair {
    pub lambda: f64,
    pub mode: FourierMode,
    pub branch: Branch,
    pub provenance: Provenance,
    /// `None` for Dirichlet pairs.
    pub delta: Option<f64>,
    pub geometry: DiskGeometry,
    pub profile: Profile,
}

/// Squared norms of an eigenfunction, see [`masses`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Masses {
    pub l2_omega: f64,
    pub l2_gamma: f64,
    pub l2_k: f64,
    pub h1: f64,
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("delta = {delta} must be > 0")))
    }
}

/// `(x/R) J_m'(x) - J_m(x)/δ` and its `x`-derivative.
fn oscillatory_secular(m: u32, radius: f64, delta: f64, x: f64) -> Result<(f64, f64)> {
    let (j, dj) = bessel_j_with_deriv(m, x)?;
    let mf = m as f64;
    let value = x / radius * dj - j / delta;
    let slope = if x > 0.0 {
        -(x - mf * mf / x) * j / radius - dj / delta
    } else {
        -dj / delta
    };
    Ok((value, slope))
}

/// `e^{-z} [(z/R) I_m'(z) - I_m(z)/δ]` and its `z`-derivative.
fn surface_secular(m: u32, radius: f64, delta: f64, z: f64) -> Result<(f64, f64)> {
    let (i, di) = bessel_i_scaled_with_deriv(m, z)?;
    let mf = m as f64;
    let h = z / radius * di - i / delta;
    let dh = if z > 0.0 {
        (z + mf * mf / z) * i / radius - di / delta
    } else {
        -di / delta
    };
    Ok((h, dh - h))
}

/// The Robin characteristic function at `λ`.
///
/// For `λ > 0` this is `√λ J_m'(√λ R) - J_m(√λ R)/δ`; for `λ = -s² < 0` it is
/// the `e^{-sR}`-scaled form `e^{-sR} (s I_m'(sR) - I_m(sR)/δ)`. Both tend to
/// the same limit at `λ = 0`.
pub fn robin_secular(lambda: f64, m: u32, geometry: DiskGeometry, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda = {lambda}")));
    }
    let r = geometry.radius();
    let value = if lambda >= 0.0 {
        oscillatory_secular(m, r, delta, lambda.sqrt() * r)?.0
    } else {
        surface_secular(m, r, delta, (-lambda).sqrt() * r)?.0
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!(
            "secular function not finite at lambda = {lambda}"
        )))
    }
}

/// Relative secular residual of an analytic Robin pair.
pub fn secular_residual(pair: &DiskEigenpair) -> Result<f64> {
    let delta = pair.delta.ok_or_else(|| {
        Error::InvalidParameter("Dirichlet pairs have no Robin residual".into())
    })?;
    let m = pair.mode.m();
    let r = pair.geometry.radius();
    let (num, den) = if pair.lambda >= 0.0 {
        let x = pair.lambda.sqrt() * r;
        let (j, dj) = bessel_j_with_deriv(m, x)?;
        (x / r * dj - j / delta, (x / r * dj).abs() + (j / delta).abs())
    } else {
        let z = (-pair.lambda).sqrt() * r;
        let (i, di) = bessel_i_scaled_with_deriv(m, z)?;
        (z / r * di - i / delta, (z / r * di).abs() + (i / delta).abs())
    };
    Ok(if den > 0.0 { num.abs() / den } else { num.abs() })
}

fn bessel_profile(m: u32, geometry: DiskGeometry, wavenumber: f64) -> Result<Profile> {
    let r = geometry.radius();
    let mut failure = None;
    let norm2 = quad::integrate(
        |t| match crate::specfun::bessel_j(m, wavenumber * t) {
            Ok(v) => v * v * t,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        r,
        QUAD_REL_TOL,
        0.0,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    // J_m is positive before its first zero, which precedes the global
    // maximum of |J_m|, so a positive coefficient fixes the sign convention.
    Ok(Profile::Bessel {
        wavenumber,
        coefficient: 1.0 / norm2?.sqrt(),
    })
}

fn scaled_i_ratio(m: u32, decay: f64, radius: f64, r: f64) -> Result<(f64, f64)> {
    let (ib, _) = bessel_i_scaled_with_deriv(m, decay * radius)?;
    let (ir, dir) = bessel_i_scaled_with_deriv(m, decay * r)?;
    let w = (decay * (r - radius)).exp() / ib;
    Ok((ir * w, decay * dir * w))
}

fn modified_profile(m: u32, geometry: DiskGeometry, decay: f64) -> Result<Profile> {
    let r = geometry.radius();
    let norm2 = quad::integrate(
        |t| {
            let v = scaled_i_ratio(m, decay, r, t).map(|p| p.0).unwrap_or(f64::NAN);
            v * v * t
        },
        0.0,
        r,
        QUAD_REL_TOL,
        0.0,
    )?;
    Ok(Profile::ModifiedBessel {
        decay,
        boundary_value: 1.0 / norm2.sqrt(),
    })
}

/// Dirichlet eigenpair `((j_{m,n}/R)², c J_m(j_{m,n} r / R))`.
pub fn dirichlet_eigenpair(m: u32, n: u32, geometry: DiskGeometry) -> Result<DiskEigenpair> {
    let j = bessel_j_zero(m, n)?;
    let k = j / geometry.radius();
    Ok(DiskEigenpair {
        lambda: k * k,
        mode: FourierMode(m),
        branch: Branch::Dirichlet,
        provenance: Provenance::SecularRoot,
        delta: None,
        geometry,
        profile: bessel_profile(m, geometry, k)?,
    })
}

fn oscillatory_root_in(m: u32, geometry: DiskGeometry, delta: f64, x_lo: f64, x_hi: f64) -> Result<DiskEigenpair> {
    let r = geometry.radius();
    let changes = count_sign_changes(
        |x| oscillatory_secular(m, r, delta, x).map(|p| p.0),
        x_lo,
        x_hi,
        BRACKET_SCAN,
    )?;
    if changes != 1 {
        return Err(Error::BracketCount {
            lo: (x_lo / r).powi(2),
            hi: (x_hi / r).powi(2),
            found: changes,
        });
    }
    let x = safeguarded_newton(
        |x| oscillatory_secular(m, r, delta, x),
        x_lo,
        x_hi,
        0.5 * (x_lo + x_hi),
        1e-15,
    )?;
    let k = x / r;
    let pair = DiskEigenpair {
        lambda: k * k,
        mode: FourierMode(m),
        branch: Branch::Oscillatory,
        provenance: Provenance::SecularRoot,
        delta: Some(delta),
        geometry,
        profile: bessel_profile(m, geometry, k)?,
    };
    let res = secular_residual(&pair)?;
    if res > SECULAR_TOL {
        return Err(Error::Bracketing(format!(
            "secular residual {res:e} above tolerance at lambda = {}",
            pair.lambda
        )));
    }
    Ok(pair)
}

/// The Robin eigenvalue accumulating at `(j_{m,n}/R)²` as `δ → 0`.
pub fn find_robin_accumulating(m: u32, n: u32, geometry: DiskGeometry, delta: f64) -> Result<DiskEigenpair> {
    check_delta(delta)?;
    let lo = bessel_j_zero(m, n)?;
    let hi = bessel_j_zero(m, n + 1)?;
    oscillatory_root_in(m, geometry, delta, lo, hi)
}

/// The Robin eigenvalue of sector `m` closest above the Dirichlet eigenvalue `target`.
///
/// `target` must be a Dirichlet eigenvalue of the sector (relative tolerance
/// `1e-9`); the root is bracketed between it and the next Dirichlet value.
pub fn find_robin_near(target: f64, m: u32, geometry: DiskGeometry, delta: f64) -> Result<DiskEigenpair> {
    check_delta(delta)?;
    let r = geometry.radius();
    for n in 1..crate::specfun::MAX_ZERO_INDEX {
        let lam = (bessel_j_zero(m, n)? / r).powi(2);
        if (lam - target).abs() <= 1e-9 * target.abs() {
            return find_robin_accumulating(m, n, geometry, delta);
        }
        if lam > target {
            break;
        }
    }
    Err(Error::InvalidParameter(format!(
        "{target} is not a Dirichlet eigenvalue of sector {m}"
    )))
}

/// The negative eigenvalue `λ = -s²` of sector `m`.
///
/// It exists iff `R/δ > m`; uniqueness follows from the monotonicity of
/// `s ↦ s I_m'(sR)/I_m(sR)`, which is checked on the bracket.
pub fn find_surface_eigenvalue(m: u32, geometry: DiskGeometry, delta: f64) -> Result<DiskEigenpair> {
    check_delta(delta)?;
    let r = geometry.radius();
    let mf = m as f64;
    if r / delta <= mf {
        return Err(Error::Bracketing(format!(
            "no surface mode in sector {m}: R/delta = {} <= m",
            r / delta
        )));
    }
    // z I'/I < z + m, so the root lies below z = R/δ + m + 1.
    let z_hi = (r / delta + mf + 1.0).max(2.0 * r / delta);
    // z I'/I < sqrt(z² + m²) puts the root above sqrt((R/δ)² - m²).
    let z_lo = 0.5 * ((r / delta).powi(2) - mf * mf).sqrt();
    let mut prev = f64::NEG_INFINITY;
    for i in 1..=BRACKET_SCAN {
        let z = z_lo + (z_hi - z_lo) * i as f64 / BRACKET_SCAN as f64;
        let (iz, diz) = bessel_i_scaled_with_deriv(m, z)?;
        let ratio = z * diz / iz;
        if !(ratio > prev) {
            return Err(Error::Bracketing(format!(
                "z I'/I not increasing near z = {z}"
            )));
        }
        prev = ratio;
    }
    let g_lo = surface_secular(m, r, delta, z_lo)?.0;
    let g_hi = surface_secular(m, r, delta, z_hi)?.0;
    if !(g_lo < 0.0 && g_hi > 0.0) {
        return Err(Error::Bracketing(format!(
            "surface secular function has no sign change on s in [{}, {}]",
            z_lo / r,
            z_hi / r
        )));
    }
    let z = safeguarded_newton(
        |z| surface_secular(m, r, delta, z),
        z_lo,
        z_hi,
        r / delta + 0.5,
        1e-15,
    )?;
    let s = z / r;
    let pair = DiskEigenpair {
        lambda: -s * s,
        mode: FourierMode(m),
        branch: Branch::Surface,
        provenance: Provenance::SecularRoot,
        delta: Some(delta),
        geometry,
        profile: modified_profile(m, geometry, s)?,
    };
    let res = secular_residual(&pair)?;
    if res > SECULAR_TOL {
        return Err(Error::Bracketing(format!(
            "surface secular residual {res:e} above tolerance"
        )));
    }
    Ok(pair)
}

/// The `count` smallest Robin eigenvalues of sector `m`, ascending.
///
/// The lowest is the surface mode when `R/δ > m` and otherwise the positive
/// root below `j_{m,1}`; the `k`-th after it lies in `(j_{m,k}, j_{m,k+1})`.
pub fn robin_sector_spectrum(m: u32, geometry: DiskGeometry, delta: f64, count: usize) -> Result<Vec<DiskEigenpair>> {
    check_delta(delta)?;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let ratio = geometry.radius() / delta;
    let mf = m as f64;
    if ratio > mf {
        out.push(find_surface_eigenvalue(m, geometry, delta)?);
    } else if ratio < mf {
        let hi = bessel_j_zero(m, 1)?;
        out.push(oscillatory_root_in(m, geometry, delta, 1e-9 * hi, hi)?);
    } else {
        return Err(Error::InvalidParameter(format!(
            "delta = R/m puts a zero eigenvalue in sector {m}"
        )));
    }
    let mut n = 1;
    while out.len() < count {
        out.push(find_robin_accumulating(m, n, geometry, delta)?);
        n += 1;
    }
    Ok(out)
}

/// `v(r)` and `v'(r)` for the pair's normalized profile.
pub fn eval_profile_with_deriv(pair: &DiskEigenpair, r: f64) -> Result<(f64, f64)> {
    let radius = pair.geometry.radius();
    if !(0.0..=radius).contains(&r) {
        return Err(Error::Domain(format!("r = {r} outside [0, {radius}]")));
    }
    let m = pair.mode.m();
    match &pair.profile {
        Profile::Bessel { wavenumber, coefficient } => {
            if pair.branch == Branch::Dirichlet && r == radius {
                let (_, dj) = bessel_j_with_deriv(m, wavenumber * r)?;
                return Ok((0.0, coefficient * wavenumber * dj));
            }
            let (j, dj) = bessel_j_with_deriv(m, wavenumber * r)?;
            Ok((coefficient * j, coefficient * wavenumber * dj))
        }
        Profile::ModifiedBessel { decay, boundary_value } => {
            let (v, dv) = scaled_i_ratio(m, *decay, radius, r)?;
            Ok((boundary_value * v, boundary_value * dv))
        }
        Profile::Discrete(f) => Ok(f.eval_with_deriv(r)),
    }
}

/// `v(r)` for the pair's normalized profile.
pub fn eval_profile(pair: &DiskEigenpair, r: f64) -> Result<f64> {
    eval_profile_with_deriv(pair, r).map(|p| p.0)
}

/// Squared norms of the eigenfunction on `Ω`, on `Γ`, on the disk `K` of
/// radius `rho`, and its full `H¹(Ω)` norm (gradient including `m²/r²`).
pub fn masses(pair: &DiskEigenpair, rho: f64) -> Result<Masses> {
    let radius = pair.geometry.radius();
    if !(rho > 0.0 && rho < radius) {
        return Err(Error::InvalidParameter(format!(
            "rho = {rho} must lie in (0, {radius})"
        )));
    }
    if let Profile::Discrete(f) = &pair.profile {
        let nm = f.norms_squared(pair.mode.m(), rho);
        return Ok(Masses {
            l2_omega: nm.l2_omega,
            l2_gamma: if pair.branch == Branch::Dirichlet { 0.0 } else { nm.l2_gamma },
            l2_k: nm.l2_k,
            h1: nm.grad + nm.l2_omega,
        });
    }
    let m2 = (pair.mode.m() as f64).powi(2);
    let value = |t: f64| eval_profile(pair, t).unwrap_or(f64::NAN);
    let l2 = |a: f64, b: f64| quad::integrate(|t| value(t).powi(2) * t, a, b, QUAD_REL_TOL, 0.0);
    let l2_omega = l2(0.0, radius)?;
    let l2_k = l2(0.0, rho)?;
    let grad = quad::integrate(
        |t| {
            let (v, dv) = eval_profile_with_deriv(pair, t).unwrap_or((f64::NAN, f64::NAN));
            dv * dv * t + m2 * v * v / t
        },
        0.0,
        radius,
        QUAD_REL_TOL,
        0.0,
    )?;
    let l2_gamma = match pair.branch {
        Branch::Dirichlet => 0.0,
        _ => radius * eval_profile(pair, radius)?.powi(2),
    };
    Ok(Masses {
        l2_omega,
        l2_gamma,
        l2_k,
        h1: grad + l2_omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAMBDA_01: f64 = 5.783185962946785;

    #[test]
    fn dirichlet_values_and_scaling() {
        let unit = DiskGeometry::unit();
        let p = dirichlet_eigenpair(0, 1, unit).unwrap();
        assert!((p.lambda - LAMBDA_01).abs() < 1e-12);
        let p2 = dirichlet_eigenpair(0, 2, unit).unwrap();
        assert!((p2.lambda - 30.471262343662087).abs() < 1e-11);
        let big = dirichlet_eigenpair(0, 1, DiskGeometry::new(2.0).unwrap()).unwrap();
        assert!((big.lambda - LAMBDA_01 / 4.0).abs() < 1e-13);
        assert_eq!(eval_profile(&p, 1.0).unwrap(), 0.0);
        let m1 = dirichlet_eigenpair(1, 1, unit).unwrap();
        assert_eq!(eval_profile(&m1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn secular_special_values() {
        let unit = DiskGeometry::unit();
        let delta = 0.3;
        assert!((robin_secular(0.0, 0, unit, delta).unwrap() + 1.0 / delta).abs() < 1e-15);
        let j = bessel_j_zero(2, 1).unwrap();
        let expected = j * crate::specfun::bessel_j_deriv(2, j).unwrap();
        let got = robin_secular(j * j, 2, unit, 0.01).unwrap();
        assert!((got - expected).abs() < 1e-10 * expected.abs());
        // continuity across zero
        let left = robin_secular(-1e-12, 0, unit, delta).unwrap();
        let right = robin_secular(1e-12, 0, unit, delta).unwrap();
        assert!((left - right).abs() < 1e-5);
    }

    #[test]
    fn scaled_surface_form_changes_sign_on_documented_bracket() {
        let unit = DiskGeometry::unit();
        for &delta in &[0.05, 0.01, 0.002] {
            let at = |s: f64| robin_secular(-s * s, 0, unit, delta).unwrap();
            assert!(at(0.5 / delta) < 0.0);
            assert!(at(2.0 / delta) > 0.0);
        }
    }

    #[test]
    fn accumulating_root_first_order() {
        let p = find_robin_near(LAMBDA_01, 0, DiskGeometry::unit(), 0.01).unwrap();
        assert!((p.lambda - LAMBDA_01 * 1.02).abs() < 2e-3);
        assert!(p.lambda > LAMBDA_01);
        assert!(secular_residual(&p).unwrap() <= SECULAR_TOL);
    }

    #[test]
    fn accumulating_distance_shrinks() {
        let unit = DiskGeometry::unit();
        let gaps: Vec<f64> = [0.02, 0.01, 0.005]
            .iter()
            .map(|&d| find_robin_near(LAMBDA_01, 0, unit, d).unwrap().lambda - LAMBDA_01)
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] > 0.0);
    }

    #[test]
    fn near_requires_dirichlet_target() {
        let err = find_robin_near(6.0, 0, DiskGeometry::unit(), 0.01);
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn surface_mode_values() {
        let unit = DiskGeometry::unit();
        let p = find_surface_eigenvalue(0, unit, 0.1).unwrap();
        let scaled = 0.01 * p.lambda;
        assert!(scaled > -1.3 && scaled < -1.0, "{scaled}");
        let q = find_surface_eigenvalue(0, unit, 0.001).unwrap();
        assert!((1e-6 * q.lambda + 1.0).abs() <= 5e-3);
        assert!(matches!(
            find_surface_eigenvalue(3, unit, 0.5),
            Err(Error::Bracketing(_))
        ));
    }

    #[test]
    fn surface_profile_is_boundary_layer() {
        let p = find_surface_eigenvalue(0, DiskGeometry::unit(), 0.01).unwrap();
        let ratio = eval_profile(&p, 0.5).unwrap() / eval_profile(&p, 1.0).unwrap();
        assert!(ratio.abs() <= 1e-12);
        assert!(eval_profile(&p, 1.0).unwrap() > 0.0);
        assert!(eval_profile(&p, 1.5).is_err());
    }

    #[test]
    fn normalization_matches_closed_form() {
        // ∫₀ᴿ J_m(kr)² r dr = R²/2 [J_m'(kR)² + (1 - m²/(kR)²) J_m(kR)²]
        let unit = DiskGeometry::unit();
        let p = find_robin_accumulating(2, 2, unit, 0.05).unwrap();
        let Profile::Bessel { wavenumber, coefficient } = p.profile else { panic!() };
        let (j, dj) = bessel_j_with_deriv(2, wavenumber).unwrap();
        let closed = 0.5 * (dj * dj + (1.0 - 4.0 / wavenumber.powi(2)) * j * j);
        assert!((coefficient.powi(2) * closed - 1.0).abs() < 1e-12);
    }

    #[test]
    fn masses_contracts() {
        let unit = DiskGeometry::unit();
        let d = dirichlet_eigenpair(1, 2, unit).unwrap();
        let md = masses(&d, 0.5).unwrap();
        assert_eq!(md.l2_gamma, 0.0);
        assert!((md.l2_omega - 1.0).abs() < 1e-10);
        // ‖∇u‖² = λ for a normalized Dirichlet eigenfunction
        assert!((md.h1 - 1.0 - d.lambda).abs() < 1e-9 * d.lambda);

        let s = find_surface_eigenvalue(0, unit, 0.01).unwrap();
        let ms = masses(&s, 0.5).unwrap();
        assert!((ms.l2_omega - 1.0).abs() < 1e-10);
        assert!(ms.l2_k / ms.h1 <= 1e-12);
        assert!(masses(&s, 1.0).is_err());
    }

    #[test]
    fn sector_spectrum_is_sorted() {
        let unit = DiskGeometry::unit();
        for m in 0..4 {
            let spec = robin_sector_spectrum(m, unit, 0.05, 4).unwrap();
            assert_eq!(spec[0].branch, Branch::Surface);
            for w in spec.windows(2) {
                assert!(w[0].lambda < w[1].lambda);
            }
        }
        // R/δ < m: lowest root is positive and below j_{m,1}²
        let low = robin_sector_spectrum(3, unit, 0.5, 2).unwrap();
        assert_eq!(low[0].branch, Branch::Oscillatory);
        assert!(low[0].lambda > 0.0 && low[0].lambda < bessel_j_zero(3, 1).unwrap().powi(2));
    }
}
