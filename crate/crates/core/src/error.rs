use thiserror::Error;

/// Errors surfaced by the library. Precondition violations and resource
/// guards are kept distinct so the CLI can map them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input rejected: {0}")]
    Input(String),
    #[error("resource guard tripped: {0}")]
    Guard(String),
    #[error("exact division failed: {0}")]
    NonExactDivision(String),
    #[error("mixed coefficient rings: {0}")]
    MixedRings(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }
}
