//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by scalar arithmetic, series construction, the DSL, and
/// the catalog machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A builder precondition was violated; names the offending parameter.
    #[error("parameter `{param}`: {reason}")]
    Domain { param: String, reason: String },

    /// A structural series operation was applied out of its domain
    /// (e.g. shifting below the valuation, inverting a non-unit).
    #[error("{0}")]
    Series(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown builder `{0}`")]
    UnknownBuilder(String),

    #[error("unbound parameter `${0}`")]
    UnboundParam(String),

    /// Evaluation failure, carrying the sub-expression it arose in.
    #[error("in `{path}`: {message}")]
    Eval { path: String, message: String },

    #[error("catalog entry `{id}` (line {line}): {message}")]
    Catalog {
        id: String,
        line: usize,
        message: String,
    },

    /// The rejection-sampling loop for a record's parameter constraints
    /// gave up; the constraint set is unsatisfiable.
    #[error("parameter `{param}`: no admissible sample after {attempts} draws")]
    SamplingExhausted { param: String, attempts: usize },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(param: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            param: param.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn series(msg: impl Into<String>) -> Self {
        Error::Series(msg.into())
    }
}
