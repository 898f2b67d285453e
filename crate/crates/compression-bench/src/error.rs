use filter_design::FilterError;
use thiserror::Error;
use transform_engine::TransformError;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("value error: {0}")]
    ValueError(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Separable taps that fail orthogonality, normalization or moment checks.
    #[error("invalid taps: {0}")]
    InvalidTaps(String),

    #[error("missing image: {0}")]
    MissingImage(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Transform(#[from] TransformError),

    #[error(transparent)]
    Filter(#[from] FilterError),
}

pub type BenchResult<T> = Result<T, BenchError>;
