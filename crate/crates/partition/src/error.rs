use lattice_core::LatticeError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    /// Region/sublattice data cannot form a valid partition.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A coset shift does not land on the requested frequency grid.
    #[error("grid alignment error: {0}")]
    GridAlignment(String),

    #[error("value error: {0}")]
    ValueError(String),

    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type PartitionResult<T> = Result<T, PartitionError>;
