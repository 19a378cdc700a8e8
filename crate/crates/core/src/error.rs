use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("lattice denominator must be positive")]
    ZeroDenominator,
    #[error("truncation must be at least 1")]
    ZeroTruncation,
    #[error("negative combined exponent numerator {0}")]
    NegativeExponent(i64),
    #[error("lattice mismatch: denominators {left} and {right} (rescale explicitly)")]
    DenomMismatch { left: u32, right: u32 },
    #[error("constant term {0} is not a unit in the integers")]
    NonUnitConstant(String),
    #[error("rescale from denominator {from} to {to} would drop exponent numerator {expo_num}")]
    LossyRescale { expo_num: usize, from: u32, to: u32 },
    #[error("denominator {to} is neither a multiple nor a divisor of {from}")]
    IncompatibleDenom { from: u32, to: u32 },
    #[error("requested order {order} exceeds truncation {trunc}")]
    OrderExceedsTrunc { order: usize, trunc: usize },
    #[error("division by a vanishing factor (1 - q^0)")]
    VanishingFactor,
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("numerator q-Pochhammer with negative length {0}")]
    NegativeLength(i64),
    #[error("q-Pochhammer base must be positive")]
    InvalidBase,
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("unknown Bailey pair `{0}`")]
    UnknownPair(String),
    #[error("expected a {expected}-fold index, got {found} components")]
    FoldMismatch { expected: usize, found: usize },
    #[error("Bailey pairs do not share a common base parameter and lattice")]
    BaseMismatch,
    #[error("specialization does not converge q-adically: {0}")]
    Divergent(String),
    #[error("resource limit: {0}")]
    TooLarge(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
