use thiserror::Error;

use crate::diagram::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed diagram word: {0}")]
    MalformedWord(String),

    #[error("label {label:?} occurs {count} times, expected exactly 2")]
    BadLabelCount { label: String, count: usize },

    #[error("word has odd length {0}")]
    OddLength(usize),

    #[error("chord {0} is not in the diagram")]
    UnknownChord(Label),

    #[error("degree {degree} exceeds the configured limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },

    #[error("intersection graph is not connected")]
    DisconnectedGraph,

    #[error("gap index {gap} is invalid for a diagram with {gaps} gaps")]
    InvalidGap { gap: usize, gaps: usize },

    #[error("chord subset is not a share")]
    NotAShare,

    #[error("move is not applicable: {0}")]
    InapplicableMove(String),

    #[error("graph has {0} vertices, more than the supported maximum")]
    GraphTooLarge(usize),

    #[error(
        "graph component has cycle rank {0}; only forests and unicyclic graphs can be realized"
    )]
    NotRealizable(usize),

    #[error("realization self-check failed: {0}")]
    RealizationMismatch(String),

    #[error("malformed graph text: {0}")]
    MalformedGraph(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid primitive parameters: {0}")]
    InvalidPrimitive(String),

    #[error("missing relation basis for degree {0}")]
    MissingBasis(usize),

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("substitution x := -y needs a polynomial without negative powers of x")]
    NegativePower,

    #[error("malformed JSON document: {0}")]
    Json(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
