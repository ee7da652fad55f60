use std::io;

use thiserror::Error;

/// Failure to read a monomial from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// The caller asked for something outside the supported range.
    #[error("usage error: {0}")]
    Usage(String),
    /// An operation is undefined on this input.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two correlator cases disagree on the same input. Never expected.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
