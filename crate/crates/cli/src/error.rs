use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] sharpe_horizon::Error),

    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    /// 2 for configuration problems, 3 when a search exceeds its budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(sharpe_horizon::Error::BudgetExceeded { .. }) => 3,
            CliError::Config(_) | CliError::Model(_) => 2,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
