use filter_design::FilterError;
use lattice_core::LatticeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PrError {
    #[error("value error: {0}")]
    ValueError(String),

    /// The bank does not satisfy an operation's precondition.
    #[error("precondition error: {0}")]
    PreconditionError(String),

    #[error("grid alignment error: {0}")]
    GridAlignment(String),

    #[error(transparent)]
    Filter(#[from] FilterError),

    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type PrResult<T> = Result<T, PrError>;
