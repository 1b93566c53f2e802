use thiserror::Error;

/// Errors raised when building, parsing or transforming objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("border path is empty")]
    EmptyPath,
    #[error("invalid step character {0:?} (expected 'S' or 'W')")]
    BadStep(char),
    #[error("diagram has {0} columns, at most 64 are supported")]
    TooWide(usize),
    #[error("invalid tree-like tableau: {0}")]
    InvalidTreeLike(String),
    #[error("invalid permutation tableau: {0}")]
    InvalidPermutationTableau(String),
    #[error("not a non-ambiguous tree: {0}")]
    NotRectangular(String),
    #[error("cell ({row},{col}) is not a corner")]
    NotACorner { row: usize, col: usize },
    #[error("cell ({row},{col}) is an occupied corner")]
    OccupiedCorner { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid colored word: {0}")]
    InvalidWord(String),
    #[error("invalid cycle form: {0}")]
    InvalidCycles(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("position {k} is not an ascending run of size 1")]
    NotARunOfSizeOne { k: usize },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("missing lookup table entry: {0}")]
    MissingTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
