use std::process::ExitCode;

use mvbandit_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or invalid configuration, or refused output.
    #[error("{0}")]
    Config(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// A bound check failed or a claim was not confirmed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Failed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
        })
    }
}

impl CliError {
    pub(crate) fn in_context(self, name: &str) -> Self {
        match self {
            CliError::Config(m) => CliError::Config(format!("`{name}`: {m}")),
            CliError::Infeasible(m) => CliError::Infeasible(format!("`{name}`: {m}")),
            CliError::Failed(m) => CliError::Failed(format!("`{name}`: {m}")),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_infeasible() {
            CliError::Infeasible(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("I/O error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
