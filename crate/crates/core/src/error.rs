use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("assignment is not a group homomorphism: {0}")]
    NotHomomorphic(String),
    #[error("invalid module-algebra action: {0}")]
    InvalidAction(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("hypothesis `{which}` fails at {witness}")]
    HypothesisFailed { which: String, witness: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
