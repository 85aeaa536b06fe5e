use thiserror::Error;

/// Errors raised by state construction and the special functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested operation annihilates the state (zero norm).
    #[error("zero state: {0}")]
    ZeroState(String),
    /// A serialized state record could not be decoded or violates an invariant.
    #[error("invalid state record: {0}")]
    Record(String),
}

pub type Result<T> = std::result::Result<T, Error>;
