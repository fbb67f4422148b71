use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("coefficient has a csch pole at x = 0")]
    PoleAtOrigin,
    #[error("field supports derivatives up to order {max}, operator needs {requested}")]
    DerivativeOrderUnsupported { requested: u32, max: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("Gram matrix is degenerate (condition number {cond:.3e})")]
    DegenerateGram { cond: f64 },
    #[error("quadrature did not converge: doubling changed the result by {change:.3e}")]
    NonConvergent { change: f64 },
    #[error("operator does not match the requested combination: {0}")]
    NoMatch(String),
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("sigma has a non-removable pole at nu = {nu}, k = {k}")]
    PoleInSigma { nu: u32, k: f64 },
    #[error("matrix element magnitude mismatch at ({row}, {col}): quadrature {numeric}, analytic {analytic}")]
    PhaseMismatch {
        row: u32,
        col: u32,
        numeric: f64,
        analytic: f64,
    },
    #[error("Bessel zero j({m},{s}) not found")]
    BesselZeroNotFound { m: u32, s: u32 },
    #[error("truncation length too small: doubling X_max shifted eigenvalues by {shift:.3e} (relative)")]
    TruncationTooSmall { shift: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
