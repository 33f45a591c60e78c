use thiserror::Error;

/// Errors raised by the algebra kernel and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("prime {prime} exceeds the configured cap {cap}")]
    PrimeCapExceeded { prime: String, cap: u64 },
    #[error("cyclotomic field of degree {degree} exceeds the dense-arithmetic cap {cap}")]
    FieldTooLarge { degree: u128, cap: u128 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("circuit graph contains a cycle")]
    CyclicGraph,
    #[error("invalid circuit graph: {0}")]
    InvalidGraph(String),
    #[error("resource budget exceeded: {0}")]
    ResourceBudgetExceeded(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("number of components {0} is not a perfect square")]
    NotASquare(usize),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
