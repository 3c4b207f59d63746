use thiserror::Error;

/// Errors raised by the library.
///
/// Configuration problems (bad type, word out of range, envelope exceeded)
/// are kept apart from invariant violations: the former are user input
/// errors, the latter mean a checked identity failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Whether this error came from user input rather than a failed check.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_) | Error::NotARoot(_) | Error::Dimension(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
