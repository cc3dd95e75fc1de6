use thiserror::Error;

use crate::expr::{DomainError, ParseError};

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error("invalid signature ({p},{q}): need p + q between 1 and 8")]
    InvalidSignature { p: usize, q: usize },

    #[error("operands belong to different algebras: {left} and {right}")]
    AlgebraMismatch { left: String, right: String },

    #[error("{0}")]
    InvalidArgument(String),

    /// A point where a field is degenerate (singular metric or tetrad,
    /// wrong signature, ill-conditioned frame).
    #[error("degenerate point {point:?}: {reason}")]
    Degenerate { reason: String, point: Vec<f64> },

    #[error("{what} is required but the chart does not declare it")]
    MissingField { what: &'static str },

    #[error("{file}: [{section}] line {line}: {message}")]
    ChartFile { file: String, section: String, line: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn degenerate(reason: impl Into<String>, point: &[f64]) -> Error {
        Error::Degenerate { reason: reason.into(), point: point.to_vec() }
    }

    /// True for errors caused by the numbers rather than by the input text.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Degenerate { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
