use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    InvalidModulus(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown Cartan type `{0}`")]
    UnknownCartanType(String),
    #[error("p = {p} must exceed the Coxeter number {h}")]
    PrimeTooSmall { p: i64, h: i64 },
    #[error("elements belong to different root systems")]
    SystemMismatch,
    #[error("weight is not in the closure of the fundamental alcove")]
    NotInClosure,
    #[error("element is not in W^0")]
    NotInW0,
    #[error("box radius {0} is too small to test any relation")]
    BoxTooSmall(i64),
    #[error("operator has empty domain")]
    EmptyDomain,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("semisimple quotient is not split over the base field")]
    NonSplit,
    #[error("idempotent lifting failed: {0}")]
    IdempotentLifting(String),
    #[error("Ext-vanishing hypothesis fails: {0}")]
    HypothesisFailure(String),
}

pub type Result<T> = core::result::Result<T, Error>;
