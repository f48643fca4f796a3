//! Robin eigenvalues with negative impedance `-1/δ` on the disk.
//!
//! The eigenproblem `Δu + λu = 0` in `Ω`, `∂_ν u - u/δ = 0` on `Γ` is solved on
//! the disk two independent ways: by roots of the Bessel secular equations
//! ([`disk`]) and by radial finite elements ([`radial`]). On top of these,
//! [`expansion`] builds the series `Λ_N^δ = Σ δ^k λ_k` of Robin eigenvalues
//! accumulating at a Dirichlet eigenvalue, and [`experiments`] turns the
//! predicted rates into pass/fail δ-sweeps.
//!
//! ```
//! use robin_core::disk::{dirichlet_eigenpair, find_robin_near, DiskGeometry};
//!
//! let unit = DiskGeometry::unit();
//! let dirichlet = dirichlet_eigenpair(0, 1, unit)?;
//! let robin = find_robin_near(dirichlet.lambda, 0, unit, 0.01)?;
//! // first-order term: λ^δ ≈ λ_0 (1 + 2δ/R)
//! assert!((robin.lambda - dirichlet.lambda * 1.02).abs() < 2e-3);
//! # Ok::<(), robin_core::Error>(())
//! ```

pub mod banded;
pub mod disk;
mod error;
pub mod expansion;
pub mod experiments;
pub mod quad;
pub mod radial;
pub mod report;
pub mod roots;
pub mod specfun;

pub use error::{Error, Result};
