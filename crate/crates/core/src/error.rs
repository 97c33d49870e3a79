use thiserror::Error;

/// Errors raised by the library. Verification mismatches are not errors; they
/// are reported as values by the operations that detect them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("invalid index set: {0}")]
    Index(String),
    #[error("{what} is {got}, over the cap of {cap}")]
    Resource {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("not a planar embedding: {0}")]
    NotPlanar(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(at: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            at: at.into(),
            msg: msg.into(),
        }
    }
}
