use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] bnpair_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {}: {message}", path.display())]
    Io { path: PathBuf, message: String },

    #[error("cannot parse {}: {message}", path.display())]
    Json { path: PathBuf, message: String },

    #[error("cannot write output: {0}")]
    Output(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(bnpair_core::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            CliError::Core(bnpair_core::Error::Internal(_)) | CliError::Output(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        }
    }
}
