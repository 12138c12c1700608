use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("triangularity violation: {0}")]
    Triangularity(String),
    #[error("inconsistent presentation: test word {test} collects to {left:?} and {right:?}")]
    Inconsistent {
        test: String,
        left: Vec<u32>,
        right: Vec<u32>,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("enumeration cap exceeded: {size} elements > cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
}
