use filter_design::FilterError;
use lattice_core::LatticeError;
use pr_verify::PrError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("value error: {0}")]
    ValueError(String),

    /// Image or band dimensions do not fit the bank, the level count or each other.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The filter bank failed (or could not run) the perfect-reconstruction check.
    #[error("unverified filter bank: {0}")]
    UnverifiedBank(String),

    /// Pyramid metadata is inconsistent with its bands or its bank.
    #[error("corrupted metadata: {0}")]
    Metadata(String),

    #[error("cut error: {0}")]
    CutError(String),

    #[error("format error: {0}")]
    FormatError(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Filter(#[from] FilterError),

    #[error(transparent)]
    Verify(#[from] PrError),

    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type TransformResult<T> = Result<T, TransformError>;
