use thiserror::Error;

/// Errors shared by all modules.
///
/// The three kinds map to distinct CLI exit codes: malformed input,
/// an axiom that fails on well-formed input, and an operation whose
/// precondition (a property of the input) does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("axiom violation: {0}")]
    Axiom(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn axiom(msg: impl Into<String>) -> Error {
    Error::Axiom(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
