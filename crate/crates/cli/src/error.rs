use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] superchar_core::Error),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("malformed table: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    /// 1 for input problems, 2 for an exceeded cap, 3 for a failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(superchar_core::Error::SizeCapExceeded { .. }) => 2,
            CliError::Mismatch(_) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
