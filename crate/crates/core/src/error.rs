use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A presentation or input record is malformed.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A basis collection violates the matroid axioms.
    #[error("not a matroid: {0}")]
    NotAMatroid(String),

    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("ground set of size {n} exceeds the oracle limit {limit}")]
    OracleLimit { n: usize, limit: usize },

    /// An exact division left a remainder; the input is not a matroid invariant.
    #[error("non-integral result in {0}")]
    NonIntegral(String),

    /// A count that must be nonnegative came out negative.
    #[error("negative result in {0}")]
    Negative(String),

    /// An equation that should have exactly one admissible solution had none.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// An identity that holds for every matroid failed on this input.
    #[error("identity failed: {0}")]
    IdentityFailed(String),
}

impl Error {
    /// True for errors that indicate a mathematical inconsistency in the input
    /// (as opposed to a malformed request).
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::NonIntegral(_)
                | Error::Negative(_)
                | Error::NoSolution(_)
                | Error::IdentityFailed(_)
                | Error::NotAMatroid(_)
        )
    }
}
