use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported modulus {0}: expected a prime no larger than 13")]
    UnsupportedPrime(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operands live over different fields or lengths")]
    DimensionMismatch,
    #[error("rows {first} and {second} are not orthogonal (symplectic product {value})")]
    NotSelfOrthogonal { first: usize, second: usize, value: u32 },
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("erasures on shares {erased:?} are not correctable")]
    NotCorrectable { erased: Vec<usize> },
    #[error("vector is not in the dual space of the stabilizer")]
    NotInDual,
    #[error("vector is not in the self-dual space")]
    NotInSelfDual,
    #[error("vector is not generated by the stabilizer generators")]
    NotInStabilizer,
    #[error("decomposition mismatch: target is not the sum of its parts")]
    DecompositionMismatch,
    #[error("size guard exceeded: {requested} > {limit}")]
    TooLarge { requested: u128, limit: u128 },
    #[error("qudit index {index} out of range for {qudits} qudits")]
    IndexOutOfRange { index: usize, qudits: usize },
    #[error("logical zero preparation failed: {0}")]
    PreparationFailed(String),
    #[error("encoding routes disagree (distance {0:e})")]
    EncodingMismatch(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
