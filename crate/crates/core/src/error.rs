use thiserror::Error;

/// Errors raised by the algebraic constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is outside the supported range (primes up to 7)")]
    UnsupportedModulus(u32),
    #[error("entry {value} is not reduced modulo {modulus}")]
    EntryOutOfRange { value: u32, modulus: u8 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("transformation is not singular")]
    NotSingular,
    #[error("transformation is not idempotent")]
    NotIdempotent,
    #[error("subspace is not included in the target")]
    NotIncluded,
    #[error("subspaces do not form a direct sum decomposition")]
    NotADirectSum,
    #[error("component family is not a normal cone: {0}")]
    NotACone(String),
    #[error("carrier is not of the form f.x.e")]
    NotInSandwich,
    #[error("functor is not induced by an automorphism: {0}")]
    NotInduced(String),
    #[error("element set is not closed under the product")]
    NotClosed,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
