use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inexact division: {num} is not divisible by {den}")]
    InexactDivision { num: String, den: String },

    #[error("polynomial {0} has a pole at q = 0")]
    NegativePower(String),

    #[error("pairing of weight {weight:?} with coroot {index} is not integral")]
    NonIntegralPairing { weight: Vec<i32>, index: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid letter {letter} for rank {rank}")]
    InvalidLetter { letter: i32, rank: usize },

    #[error("invalid column {0}")]
    InvalidColumn(String),

    #[error("invalid spin column: {0}")]
    InvalidSpinColumn(String),

    #[error("weight is not in Omega_+: {0}")]
    NotInOmegaPlus(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("tabloids have different shapes")]
    ShapeMismatch,

    #[error("column {0} is not admissible")]
    NotAdmissible(String),

    #[error("tabloid {0} is not an orthogonal tableau")]
    NotOrthogonalTableau(String),

    #[error("straightening exceeded the step limit of {limit} rewrites")]
    StepLimitExceeded { limit: usize },

    #[error("A(T) construction did not reach the highest weight tableau after {0} steps")]
    IterationLimit(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that indicate a defect in the algorithms rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision { .. }
                | Error::StepLimitExceeded { .. }
                | Error::IterationLimit(_)
                | Error::Internal(_)
        )
    }
}
