use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("signature error: {0}")]
    Signature(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("variable `{0}` has no value in the assignment")]
    Unassigned(String),

    #[error("literal is not in canonical form: {0}")]
    NotCanonical(String),

    /// An operation was asked for something the model does not contain,
    /// e.g. an even root of a negative real.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
