use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group: {0}")]
    MalformedGroup(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("non-equivariant action: {0}")]
    NonEquivariant(String),
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
