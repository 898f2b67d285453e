use thiserror::Error;

/// Errors raised by lattice construction and quotient arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    /// Generator matrix is singular or otherwise unusable.
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    /// A lattice claimed to be a sublattice is not contained in its parent.
    #[error("not a sublattice: {0}")]
    NotSublattice(String),

    /// A frequency shift does not land on the sampling grid.
    #[error("grid alignment error: {0}")]
    GridAlignment(String),

    /// Generic invalid argument.
    #[error("value error: {0}")]
    ValueError(String),
}

pub type LatticeResult<T> = Result<T, LatticeError>;
