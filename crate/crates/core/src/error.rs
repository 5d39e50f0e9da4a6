use thiserror::Error;

/// Errors raised by field construction, arithmetic and the enumeration caps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree {0} is outside 1..=8")]
    DegreeOutOfRange(u32),
    #[error("field order {p}^{k} exceeds 2^20")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("element index {index} is out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("field of order {0} is not the square of a prime power")]
    NotQuadraticExtension(u32),
    #[error("singular matrix has no inverse")]
    SingularMatrix,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("argument `{0}` must be nonzero")]
    ZeroArgument(&'static str),
    #[error("additive character must be nontrivial")]
    TrivialCharacter,
    #[error("{what} needs {size:.3e} steps, above the cap of {cap:.0e}")]
    CapExceeded { what: &'static str, size: f64, cap: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects a workload whose size is above `cap`.
pub(crate) fn check_cap(what: &'static str, size: f64, cap: f64) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
