use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bracketing failed: {0}")]
    Bracketing(String),

    /// A bracket held zero or several sign changes where exactly one was expected.
    #[error("expected exactly one root in [{lo}, {hi}], found {found}")]
    BracketCount { lo: f64, hi: f64, found: usize },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("discrete Dirichlet eigenvalue {discrete} differs from {analytic} by more than {tol:e} (relative)")]
    GridAccuracy { discrete: f64, analytic: f64, tol: f64 },

    /// The bordered-system multiplier and the boundary flux formula disagree.
    #[error("compatibility defect at order {order}: multiplier gives {multiplier}, flux formula gives {flux}")]
    CompatibilityDefect { order: usize, multiplier: f64, flux: f64 },

    #[error("shifted form is not coercive (theta_min = {theta_min}) for alpha = {alpha}, delta = {delta}")]
    NotCoercive { alpha: f64, delta: f64, theta_min: f64 },

    #[error("fit needs at least {needed} usable rows, got {got}")]
    TooFewRows { needed: usize, got: usize },

    #[error("no coercive column in the alpha list")]
    NoCoerciveColumn,

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
