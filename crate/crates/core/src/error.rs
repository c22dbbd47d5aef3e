use thiserror::Error;

use crate::formula::ParseError;
use crate::pts::Violation;
use crate::qualitative::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Format(String),

    #[error("invalid model:\n{}", join_lines(.0))]
    InvalidModel(Vec<Violation>),

    #[error("unknown transition `{0}`")]
    UnknownTransition(String),

    #[error("invalid execution prefix at position {index}: {reason}")]
    BrokenPrefix { index: usize, reason: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("formula `{0}` is not positive (negation is not allowed here)")]
    NotPositive(String),

    #[error("formula `{0}` is not in positive normal form")]
    NotPnf(String),

    #[error("atom `{0}` already occurs in the chain labels")]
    AtomNotFresh(String),

    #[error("words have different shapes ({0}) and ({1})")]
    ShapeMismatch(String, String),

    #[error("the search has found a violation of `{formula}`")]
    ViolationFound { formula: String, witness: Box<Witness> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn join_lines(violations: &[Violation]) -> String {
    violations.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n")
}
