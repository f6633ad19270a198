use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: u32, degree: u32 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },

    #[error("group is not transitive")]
    Intransitive,

    #[error("orbit budget exceeded ({budget})")]
    OrbitBudget { budget: u64 },

    #[error("canonical-labeling node budget exceeded ({budget})")]
    NodeBudget { budget: u64 },

    #[error("parameter-infeasible: {0}")]
    Infeasible(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
