use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or malformed input files.
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Core(#[from] thue_core::Error),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(thue_core::Error::ResourceLimit(_)) => 3,
            CliError::Core(thue_core::Error::NoSuchSequence(_) | thue_core::Error::FallbackFailed { .. }) => 1,
            _ => 2,
        }
    }
}
