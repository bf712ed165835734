use thiserror::Error;

/// Errors raised by state construction, measures, and the inequality checkers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("party label `{0}` appears in both operands")]
    LabelCollision(String),

    #[error("unknown party label `{0}`")]
    UnknownLabel(String),

    #[error("party selection is empty")]
    EmptySelection,

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("matrix does not have orthonormal columns (max deviation {0:e})")]
    NotIsometry(f64),

    #[error("decomposition does not reproduce its target (max deviation {0:e})")]
    InvalidDecomposition(f64),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
