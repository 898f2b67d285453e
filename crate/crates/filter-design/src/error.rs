use lattice_core::LatticeError;
use partition::PartitionError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("value error: {0}")]
    ValueError(String),

    /// The bank kind or family does not match what an operation requires.
    #[error("invalid filter bank: {0}")]
    InvalidBank(String),

    #[error("grid alignment error: {0}")]
    GridAlignment(String),

    #[error("format error: {0}")]
    FormatError(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Partition(#[from] PartitionError),

    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type FilterResult<T> = Result<T, FilterError>;
