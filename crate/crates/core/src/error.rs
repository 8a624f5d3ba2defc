use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty hypothesis set")]
    Empty,

    #[error("p-value {value} at position {index} is outside [0, 1]")]
    PValueRange { index: usize, value: f64 },

    #[error("duplicate hypothesis id `{0}`")]
    DuplicateId(String),

    #[error("rank {rank} outside 1..={m}")]
    RankOutOfRange { rank: usize, m: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid scaling function: {0}")]
    InvalidScaling(String),

    #[error("invalid shape function: {0}")]
    InvalidShape(String),

    #[error("weight {value} at position {index} is not a positive finite number")]
    InvalidWeight { index: usize, value: f64 },

    #[error("unknown hypothesis index {index} (universe has {m})")]
    UnknownHypothesis { index: usize, m: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no replication records")]
    NoRecords,
}

pub type Result<T> = std::result::Result<T, Error>;
