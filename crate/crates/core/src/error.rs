use std::fmt;

use thiserror::Error;

use crate::model::{ShapeViolation, Violation};

/// A syntax error with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("invalid weighted sequence {seq}: {}", join(.violations))]
    Invalid {
        seq: &'static str,
        violations: Vec<Violation>,
    },

    #[error("malformed witness: {}", join(.0))]
    Shape(Vec<ShapeViolation>),

    #[error("{0}")]
    Domain(String),

    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
