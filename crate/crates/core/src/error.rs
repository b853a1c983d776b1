use thiserror::Error;

use crate::logic::LogicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("state limit of {limit} exceeded while building {what}")]
    StateLimit { limit: usize, what: String },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid transition system: {0}")]
    InvalidSystem(String),
    #[error("malformed strategy document: {0}")]
    Document(String),
    #[error("unsupported strategy document version {0}")]
    Version(u64),
    #[error("strategy state {state} has no transition for env letter {{{letter}}}")]
    MissingTransition { state: usize, letter: String },
    #[error("invalid problem spec: {0}")]
    Spec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
