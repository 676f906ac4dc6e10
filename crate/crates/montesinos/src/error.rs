use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("0/0 is neither a slope nor a tangle fraction")]
    IndeterminateFraction,

    #[error("{0} is infinite where a finite fraction is required")]
    InfiniteValue(String),

    #[error("basis change matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(BigInt),

    #[error("degenerate tangle {0}: tangle fractions must be finite and non-integral")]
    DegenerateTangle(String),

    #[error("a Montesinos link needs at least one tangle")]
    EmptyTangleList,

    #[error("pretzel strand {0}: strands must have at least two crossings")]
    DegenerateStrand(String),

    #[error("tubed knot kind must be 0 or 1, got {0}")]
    BadTubedKind(u8),

    #[error("tubed knot fractions {0}, {1}: denominators must be at least 2 and not both even")]
    BadTubedFractions(String, String),

    #[error("{0} is a link with more than one component, not a knot")]
    NotAKnot(String),

    #[error("slope {0} is not integral")]
    NonIntegralSlope(String),

    #[error("fiber multiplicity {0} must be positive")]
    BadMultiplicity(BigInt),

    #[error("fiber {0}/{1} is not in lowest terms")]
    UnreducedFiber(BigInt, BigInt),

    #[error("cannot read {token:?} as {expected}")]
    Malformed { expected: &'static str, token: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
