use thiserror::Error;

/// Errors raised by the library. Verdict-style "don't know" answers are
/// ordinary return values, never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by the zero polynomial at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid target for `{id}`: {msg}")]
    InvalidTarget { id: String, msg: String },
    #[error("invalid radius schedule: {0}")]
    InvalidRadii(String),
    #[error("duplicate family member: {0}")]
    DuplicateMember(String),
    #[error("unknown family member: {0}")]
    UnknownMember(String),
    #[error("missing compound member: {0}")]
    MissingCompound(String),
    #[error("relation does not hold algebraically: {0}")]
    FalseRelation(String),
    #[error("unsupported degree {degree} (max {max})")]
    UnsupportedDegree { degree: usize, max: usize },
    #[error("polynomial is reducible over Q; factor {factor}")]
    Reducible { factor: String },
    #[error("polynomial must be nonzero and primitive")]
    NotPrimitive,
    #[error("point cloud too large: {size} > {cap}")]
    CloudTooLarge { size: usize, cap: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
