use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quaternion token `{token}`")]
    InvalidToken { token: String },

    #[error("parse error at line {line}, token {token}: {message}")]
    Parse {
        line: usize,
        token: usize,
        message: String,
    },

    #[error("element count {found} does not match dims product {expected}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("invalid dims: {0}")]
    InvalidDims(String),

    #[error("shift has {found} entries but the array has {expected} axes")]
    ShiftArity { expected: usize, found: usize },

    #[error(
        "naive spectrum needs {elements} elements but the budget is {budget}; \
         use the FFT path or sampled shifts"
    )]
    BudgetExceeded { elements: usize, budget: usize },

    #[error("FFT result component {value} is {deviation:.3} away from an integer")]
    Numerical { value: f64, deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("lengths {0} and {1} are not coprime")]
    NotCoprime(usize, usize),

    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
