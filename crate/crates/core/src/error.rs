use thiserror::Error;

/// Errors raised by the exact-algebra, lattice and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("polynomial is not exactly divisible")]
    NonDivisible,
    #[error("zero substituted for a variable that occurs with a negative exponent")]
    ZeroSubstitution,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid order l={l} for n={n}")]
    InvalidOrder { l: usize, n: usize },
    #[error("parameter degeneracy: {0}")]
    ParameterDegeneracy(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
