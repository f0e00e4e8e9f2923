use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by the zero rational function or a zero constant.
    #[error("domain error: {0}")]
    Domain(String),
    /// Mismatched charts, out-of-range indices, wrong form degree and similar caller mistakes.
    #[error("usage error: {0}")]
    Usage(String),
    /// A denominator vanished at the requested evaluation point.
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// A chart failed construction-time validation.
    #[error("construction error: {0}")]
    Construction(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// An exact linear system that must be consistent was not; signals a convention bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
