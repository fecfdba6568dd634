//! Failure classes of a run and their exit codes.

use kodlib_core::Error;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// The request text is not valid JSON or not a request object.
    #[error("malformed request: {0}")]
    Json(String),
    /// The payload does not match the command's schema.
    #[error("invalid payload: {0}")]
    Payload(String),
    #[error("{0}")]
    Input(Error),
    /// A proven statement or a dual-route check failed.
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_consistency() {
            RunError::Consistency(e.to_string())
        } else {
            RunError::Input(e)
        }
    }
}

impl RunError {
    /// 2 for validation errors, 3 for consistency errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Consistency(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Json(_) => "malformed",
            RunError::Payload(_) => "payload",
            RunError::Input(_) => "validation",
            RunError::Consistency(_) => "consistency",
            RunError::Io { .. } => "io",
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord { kind: self.kind().to_string(), message: self.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}
