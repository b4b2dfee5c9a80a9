use thiserror::Error;

/// Failures of the numerical operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lp exponent must satisfy p >= 1 (or p = inf), got {0}")]
    InvalidExponent(f64),

    #[error("quasinorm exponent must lie in (0, 1], got {0}")]
    InvalidQuasinormExponent(f64),

    #[error("vector must be nonempty")]
    EmptyVector,

    #[error("operator dimension must be at least 1")]
    EmptyOperator,

    #[error("expected {expected} entries for a square operator, found {found}")]
    NotSquare { expected: usize, found: usize },

    #[error("non-finite value at {0}")]
    NonFinite(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigensolver failed to converge after {iterations} iterations (dim {dim})")]
    NoConvergence { dim: usize, iterations: usize },

    #[error(
        "running power T^{power} reached entry magnitude {magnitude:e}; \
         rescale the operator (e.g. by 1/spectral radius) and retry"
    )]
    PowerOverflow { power: usize, magnitude: f64 },

    #[error("symmetry order d must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("trace window too short: need n_max >= {required}, have {n_max}")]
    WindowTooShort { n_max: usize, required: usize },

    #[error("operator dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("invalid nuclear representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
