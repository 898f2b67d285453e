use compression_bench::BenchError;
use filter_design::FilterError;
use partition::PartitionError;
use pr_verify::PrError;
use thiserror::Error;
use transform_engine::TransformError;

/// Command failures, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// A check ran and failed.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Bad arguments or parameter values.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<FilterError> for CliError {
    fn from(e: FilterError) -> Self {
        match e {
            FilterError::Io(_) | FilterError::FormatError(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PrError> for CliError {
    fn from(e: PrError) -> Self {
        match e {
            PrError::Filter(f) => f.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Io(_) | TransformError::FormatError(_) => CliError::Io(e.to_string()),
            TransformError::UnverifiedBank(_) => CliError::Verification(e.to_string()),
            TransformError::Filter(f) => f.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Io(_) | BenchError::MissingImage(_) => CliError::Io(e.to_string()),
            BenchError::Transform(t) => t.into(),
            BenchError::Filter(f) => f.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}
