use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitivity")]
    ZeroVector,

    #[error("not a valid 4n-representation: ({x}, {y}, {z})")]
    NotARepresentation { x: BigInt, y: BigInt, z: BigInt },

    #[error("n must be a positive integer, got {0}")]
    NonPositive(BigInt),

    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotPrimeOneModFour(u64),

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(&'static str),

    #[error("form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: BigInt, b: BigInt, c: BigInt },

    #[error("matrix is not an isometry of L20: {0:?}")]
    NotAnIsometry([[i64; 3]; 3]),

    #[error("group closure exceeded {0} elements")]
    ClosureOverflow(usize),

    #[error("index anomaly: 160*{n}/{d} is not a perfect square")]
    IndexAnomaly { n: BigInt, d: BigInt },

    #[error("no quadrics to restrict for n = {0}")]
    NoQuadrics(u64),

    #[error("scaled quartic model needs r >= 3, got {0}")]
    DegenerateScale(u64),

    #[error("theorem discrepancy at n = {n}: {what}")]
    Discrepancy { n: u64, what: String },

    #[error("malformed quadric record {index}: {reason}")]
    MalformedQuadric { index: usize, reason: String },

    #[error("csv: {0}")]
    Csv(String),
}
