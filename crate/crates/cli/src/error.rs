use k3cy_core::Error;
use serde_json::Value;

/// A failed command, classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Domain { reason: &'static str, message: String },
    #[error("{0}")]
    Numeric(String),
    /// A verification ran to completion and some check failed; the report
    /// is still printed.
    #[error("verification mismatch")]
    Mismatch(Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain { .. } => 2,
            CliError::Numeric(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn domain(reason: &'static str, message: impl Into<String>) -> Self {
        CliError::Domain { reason, message: message.into() }
    }

    /// Short machine-readable tag for the error object.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain { reason, .. } => reason,
            CliError::Numeric(_) => "numeric",
            CliError::Mismatch(_) => "mismatch",
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse(_) => CliError::Usage(msg),
            Error::Integration(_) => CliError::Numeric(msg),
            Error::Domain(_) => CliError::domain("Domain", msg),
            Error::NonMinimalModel { .. } => CliError::domain("NonMinimalModel", msg),
            Error::NotK3(_) => CliError::domain("NotK3", msg),
            Error::NotCalabiYauAdmissible(_) => CliError::domain("NotCalabiYauAdmissible", msg),
            Error::Inconsistent(_) => CliError::domain("Inconsistent", msg),
            Error::Capacity { .. } => CliError::domain("Capacity", msg),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("malformed JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
