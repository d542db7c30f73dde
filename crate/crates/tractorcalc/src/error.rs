use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operator or formula was evaluated at a weight where it has a pole
    /// or is otherwise undefined.
    #[error("excluded weight in {op}: {detail}")]
    ExcludedWeight { op: &'static str, detail: String },

    #[error("degree out of range in {op}: {detail}")]
    Degree { op: &'static str, detail: String },

    /// Input lies outside the subspace an operator branch is defined on.
    #[error("precondition failed in {op}: {detail}")]
    Precondition { op: &'static str, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cannot restrict to the boundary: {0}")]
    Restriction(String),

    #[error("scale mismatch: {0}")]
    ScaleMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn excluded(op: &'static str, detail: impl Into<String>) -> Error {
    Error::ExcludedWeight {
        op,
        detail: detail.into(),
    }
}

pub(crate) fn precondition(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition {
        op,
        detail: detail.into(),
    }
}
