use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KronError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid closed point: {0}")]
    InvalidPoint(String),
    #[error("modules live over different fields")]
    FieldMismatch,
    #[error("operation requires a finite field")]
    FieldNotFinite,
    #[error("input too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("enumeration exceeded the limit of {0} items")]
    Overflow(usize),
    #[error("the given subspaces are not a subrepresentation")]
    NotASubmodule,
    #[error("module is not in the torsion class of {0}")]
    NotTorsion(String),
    #[error("module is not in the torsionfree class of {0}")]
    NotTorsionfree(String),
    #[error("heart objects belong to different torsion pairs")]
    PairMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, KronError>;
