//! Scenario loading, commands and output formatting behind the `diamonds`
//! binary.

pub mod commands;
pub mod format;
pub mod scenario;

use thiserror::Error;

/// A command failure, mapped to the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, names, files or inputs: exit 2.
    #[error("{0}")]
    Usage(String),
    /// An audit or checked property failed: exit 1.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<causal_diamonds::Error> for CliError {
    fn from(e: causal_diamonds::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}
