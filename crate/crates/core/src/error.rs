use thiserror::Error;

pub type Result<T> = std::result::Result<T, MiningError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MiningError {
    #[error("itemset width {left} does not match universe width {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("item index {index} is outside a universe of {size} items")]
    ItemOutOfRange { index: usize, size: usize },

    #[error("minimum support {0}% is outside [0, 100]")]
    InvalidPercent(f64),

    #[error("minimum confidence {0} is outside [0, 1]")]
    InvalidConfidence(f64),

    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("universe of {size} items exceeds the enumeration limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("support of antecedent {0} is missing from the frequent family")]
    ClosureViolation(String),

    #[error("dataset generation failed: {0}")]
    Generation(String),
}
