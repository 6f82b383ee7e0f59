use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("permutations need at least one point")]
    EmptyDomain,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("malformed cycle notation: {0}")]
    BadCycleNotation(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("empty generating set")]
    NoGenerators,
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: String,
        cap: u64,
    },
    #[error("invalid field size {0}")]
    InvalidField(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element is not in the group")]
    NotMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup index must be 2, found {0}")]
    IndexNotTwo(String),
    #[error("{0} does not divide the group order")]
    PrimeNotDividing(u64),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn cap_exceeded(what: &'static str, size: impl core::fmt::Display, cap: u64) -> Error {
    use alloc::string::ToString;
    Error::CapExceeded {
        what,
        size: size.to_string(),
        cap,
    }
}
