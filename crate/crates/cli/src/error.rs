use casimir_core::CasimirError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Numerical(#[from] CasimirError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status: 2 for invalid input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(e) => match e {
                CasimirError::NonConvergence { .. } | CasimirError::StepUnderflow { .. } => 3,
                _ => 2,
            },
            CliError::Io(_) => 1,
        }
    }
}
