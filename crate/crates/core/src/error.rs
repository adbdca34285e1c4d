use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("symbol {0:?} is not allowed in an alphabet")]
    InvalidSymbol(char),
    #[error("symbol {0:?} appears twice in the alphabet")]
    DuplicateSymbol(char),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("symbol index {0} is outside the alphabet")]
    ForeignSymbol(usize),
    #[error("alphabet has more than 255 symbols")]
    AlphabetTooLarge,
    #[error("probes must be non-empty")]
    EmptyProbe,
    #[error("array dimensions must be at least 1x1, got {rows}x{cols}")]
    EmptyArray { rows: usize, cols: usize },
    #[error("expected {expected} probes for the array, got {actual}")]
    CountMismatch { expected: usize, actual: usize },
    #[error("invalid placement: {0}")]
    InvalidPlacement(String),
    #[error("deposition sequence is not a supersequence of probe {probe}")]
    NotASupersequence { probe: String },
    #[error("embedding lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("deposition sequence is redundant at position {position}")]
    NotGood { position: usize },
    #[error("search exceeded its budget: {0}")]
    InstanceTooLarge(String),
    #[error("fresh symbol {0:?} collides with the input alphabet")]
    AlphabetCollision(char),
    #[error("malformed solution: {0}")]
    MalformedSolution(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid integer program: {0}")]
    InvalidProgram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
