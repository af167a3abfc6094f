use thiserror::Error;

/// A syntax error in a ring expression, element literal or tuple.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// A ring constructor rule was violated (non-monic modulus, fraction
    /// field over a non-domain, ...).
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands belong to different rings: {left} and {right}")]
    RingMismatch { left: String, right: String },

    #[error("{ring} is infinite; {operation} needs a finite ring")]
    InfiniteRing { ring: String, operation: &'static str },

    #[error("{ring} has {cardinality} elements, more than the supported {limit}")]
    TooLarge {
        ring: String,
        cardinality: String,
        limit: u64,
    },

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("unknown variable {name} in {ring}")]
    UnknownVariable { name: String, ring: String },

    #[error("map is not a unital ring isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("not a lambda-quiddity")]
    NotQuiddity,

    #[error("search needs {candidates} candidates, budget is {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
