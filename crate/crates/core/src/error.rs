use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("InvalidModulus: modulus must be at least 1 and at most {max}, got {n}")]
    InvalidModulus { n: u64, max: u64 },
    #[error("EmptySequence: sequences must have at least one term")]
    EmptySequence,
    #[error("ResidueOutOfRange: {value} is not a residue modulo {n}")]
    ResidueOutOfRange { value: u64, n: u64 },
    #[error("LengthTooShort: need length at least {min}, got {len}")]
    LengthTooShort { len: usize, min: usize },
    #[error("IndexOutOfRange: index {index} is outside 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("NotADivisor: {q} does not divide {n}")]
    NotADivisor { q: u64, n: u64 },
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    #[error("NotCoprime: gcd({a}, {n}) > 1")]
    NotCoprime { a: u64, n: u64 },
    #[error("EvenModulus: operation requires an odd modulus, got {0}")]
    EvenModulus(u64),
    #[error("ModulusTooSmall: operation requires n >= {min}, got {n}")]
    ModulusTooSmall { n: u64, min: u64 },
    #[error("NotInvertible: {d} is not invertible modulo {n}")]
    NotInvertible { d: u64, n: u64 },
    #[error("UnsupportedLength: no construction for length {m} modulo {n} ({reason})")]
    UnsupportedLength { n: u64, m: usize, reason: String },
    #[error("NotAdmissible: {n} does not divide binomial({m}+1, 2)")]
    NotAdmissible { n: u64, m: usize },
    #[error("BudgetExceeded: search space {states} exceeds the budget of {max_states} states")]
    BudgetExceeded { states: String, max_states: u64 },
    #[error("ParseError: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used by the CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidModulus { .. } => "InvalidModulus",
            Error::EmptySequence => "EmptySequence",
            Error::ResidueOutOfRange { .. } => "ResidueOutOfRange",
            Error::LengthTooShort { .. } => "LengthTooShort",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotADivisor { .. } => "NotADivisor",
            Error::NotPrime(_) => "NotPrime",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::EvenModulus(_) => "EvenModulus",
            Error::ModulusTooSmall { .. } => "ModulusTooSmall",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::UnsupportedLength { .. } => "UnsupportedLength",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
