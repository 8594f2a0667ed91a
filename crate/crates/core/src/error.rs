use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sequence satisfies the constraints: {0}")]
    NoSuchSequence(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Search fallback gave up; `attempt` is the rejected construction.
    #[error("fallback search failed: {reason}")]
    FallbackFailed { reason: String, attempt: Vec<u32> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
