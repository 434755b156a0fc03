use thiserror::Error;

/// Errors raised by state construction, linear algebra and threshold analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {found}")]
    EntryCount {
        dim: usize,
        expected: usize,
        found: usize,
    },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (asymmetry {0:e} exceeds 1e-9)")]
    Asymmetric(f64),

    #[error("non-finite value in input")]
    NonFinite,

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (residual {residual:e}, tol {tol:e})")]
    NoConvergence {
        sweeps: usize,
        residual: f64,
        tol: f64,
    },

    #[error("local dimension must be at least 2, got {0}")]
    InvalidLocalDimension(usize),

    #[error("Schmidt coefficients are not normalized: sum of squares is {0}")]
    NotNormalized(f64),

    #[error("Schmidt coefficients are all zero")]
    ZeroVector,

    #[error("depolarization parameter p must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),

    #[error("invalid number of vanishing coefficients j={j} for d={d} (need j <= d-2)")]
    InvalidRank { d: usize, j: usize },

    #[error("could not separate trivial eigenvalue {value} from the block spectrum (nearest distance {distance:e})")]
    RootExtraction { value: f64, distance: f64 },

    #[error("the closed-form cubic solver requires d = 3, got d = {0}")]
    CubicRequiresThree(usize),

    #[error("sweep grid needs at least 2 steps per axis, got {0}")]
    InvalidGrid(usize),

    #[error("invalid state file: {0}")]
    StateFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
