use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input exceeds the documented working scale of an operation.
    #[error("{what}: {value} exceeds the supported limit {limit}")]
    Capacity {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("{x} is not invertible modulo {modulus}")]
    NonInvertible { x: i64, modulus: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("domain error: {0}")]
    Domain(String),
    /// Two independent computations of the same quantity disagreed.
    #[error("internal consistency fault: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
