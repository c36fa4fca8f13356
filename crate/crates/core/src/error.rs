use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for ambient dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("expected a homogeneous {what}")]
    NotHomogeneous { what: String },

    #[error("expected a form of arity {expected}, found arity {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid foliation data: {0}")]
    InvalidSpec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An identity that must hold for valid input failed. Always a bug or a
    /// counterexample worth reporting.
    #[error("internal identity check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
