use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// The variants map one-to-one onto the CLI exit codes: usage and
/// precondition problems exit with 2, resource caps with 3, and internal
/// assertion failures with 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource cap exceeded: {what} exceeds cap {cap}")]
    Resource { what: String, cap: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Precondition(_) | Error::Json(_) => 2,
            Error::Resource { .. } => 3,
            Error::Overflow(_) | Error::Assertion(_) | Error::Io(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
