use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants map one-to-one onto the failure modes of the individual
/// operations, so callers can match on the precise reason.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not positive")]
    NotPositive(i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("operands belong to different fields (d={0} vs d={1})")]
    FieldMismatch(u64, u64),
    #[error("{num} is not divisible by {den}")]
    NotDivisible { num: String, den: String },
    #[error("{0} is a rational integer, not a quadratic irrational")]
    NotQuadratic(String),
    #[error("{0} fails the CNS criterion F >= 2, -1 <= E <= F")]
    NotCns(String),
    #[error("{0}: E^2 - 4F does not equal the field discriminant")]
    RingMismatch(String),
    #[error("base {0} has a norm too large for a machine digit set")]
    BaseTooLarge(String),
    #[error("no digit of base {base} works for {gamma}")]
    NoDigit { gamma: String, base: String },
    #[error("more than one digit of base {base} works for {gamma}")]
    AmbiguousDigit { gamma: String, base: String },
    #[error("expansion of {gamma} in base {base} did not terminate within {steps} steps")]
    NonTerminating { gamma: String, base: String, steps: usize },
    #[error("digit {digit} at position {index} outside 0..{limit}")]
    DigitOutOfRange { digit: u64, index: usize, limit: u64 },
    #[error("input must be non-zero")]
    ZeroInput,
    #[error("{0} has a prime factor beyond the trial-division bound")]
    FactorizationIncomplete(String),
    #[error("{0} has norm below 2")]
    UnitInput(String),
    #[error("polynomial has no non-zero coefficient")]
    ZeroPolynomial,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("case report is not a gap case")]
    NotGapCase,
    #[error("bases {0} and {1} are multiplicatively dependent")]
    DependentBases(String, String),
    #[error("no usable input records")]
    EmptyInput,
    #[error("{0} and {1} do not satisfy the stated power relation")]
    NotDependent(String, String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cannot parse quadratic integer {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
