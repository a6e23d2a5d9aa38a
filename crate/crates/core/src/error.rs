use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {degree} is outside the admissible range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("monomial {monomial} is not a member of the target monomial set")]
    SupportNotContained { monomial: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rank hint {rank} exceeds min(rows, cols) = {max}")]
    RankOutOfRange { rank: usize, max: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("leading triangular block is ill-conditioned (condition estimate {estimate:e})")]
    IllConditioned { estimate: f64 },

    #[error("point {index} is the zero vector")]
    ZeroPoint { index: usize },

    #[error("points {first} and {second} are the same projective point")]
    DuplicatePoint { first: usize, second: usize },

    #[error("ideal oracle returned linearly dependent polynomials in degree {degree}")]
    DependentBasis { degree: usize },

    #[error("the ideal contains a nonzero constant and is not proper")]
    NotProper,

    #[error("invalid complement: {0}")]
    InvalidComplement(String),

    #[error("generators of degree {degree} are not in border form")]
    NotBorderForm { degree: usize },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("invalid curve profile: {0}")]
    InvalidProfile(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("monomial table for {nvars} variables in degree {degree} is too large")]
    Capacity { nvars: usize, degree: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
