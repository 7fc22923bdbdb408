use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("evaluation pole: {0}")]
    EvaluationPole(String),
    #[error("window underflow: {0}")]
    WindowUnderflow(String),
    #[error("coefficient ({0}, {1}) lies outside the certified window")]
    OutOfWindow(i32, i32),
    #[error("series is not invertible: zero constant term")]
    NonInvertible,
    #[error("argument {0} cannot be expanded in the series grading")]
    NonExpandable(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("limit failure: {0}")]
    LimitFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
