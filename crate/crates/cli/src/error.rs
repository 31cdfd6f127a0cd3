use thiserror::Error;

/// Process exit status for each failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Infeasible = 1,
    Input = 2,
    Internal = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Core(#[from] omniscience::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        use omniscience::Error as E;
        match self {
            CliError::Infeasible(_) => ExitCode::Infeasible,
            CliError::Internal(_) | CliError::Core(E::Internal(_)) => ExitCode::Internal,
            CliError::Core(E::Overflow) => ExitCode::Internal,
            _ => ExitCode::Input,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
