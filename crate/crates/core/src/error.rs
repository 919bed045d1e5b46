use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// The expansion of a tree product is not a combination of whole fibers.
    #[error("closure violation in {left} * {right}: {detail}")]
    ClosureViolation { left: String, right: String, detail: String },

    #[error("canopy splitting violated by {left} * {right}: term {term} has canopy {canopy}")]
    SplittingViolation { left: String, right: String, term: String, canopy: String },

    #[error("coefficient overflow")]
    Overflow,
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
