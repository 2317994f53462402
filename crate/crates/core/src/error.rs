//! Shared error type for the certification engine.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p = 2 rejected: an odd prime is required")]
    EvenPrime,

    #[error("the zero polynomial is not a valid input here")]
    ZeroPolynomial,

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("coefficient denominators do not clear under the factorial scale")]
    NotFactorialShape,

    #[error("invalid coefficient family: {0}")]
    InvalidSpec(String),

    #[error("degree must be even")]
    OddDegree,

    #[error("certificate refused: {0}")]
    Refused(String),

    #[error("no witness found for {what} among primes up to {limit}")]
    WitnessExhausted { what: String, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
