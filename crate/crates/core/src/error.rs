use thiserror::Error;

/// Errors reported by the algebra and representation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,

    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorCountMismatch(u32, u32),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(u32, u32),

    #[error("generator count out of range: {0} (supported 1..={1})")]
    GeneratorCountOutOfRange(u32, u32),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("truncation order mismatch: {0} vs {1}")]
    TruncationOrderMismatch(usize, usize),

    #[error("non-constant trace: representation is not CT (tr(B^{power}) = {trace})")]
    NonConstantTrace { power: usize, trace: String },

    #[error("degree too large: {0} (limit {1})")]
    DegreeTooLarge(usize, usize),

    #[error("involution required: {0} has declared order {1}")]
    InvolutionRequired(String, u32),

    #[error("endomorphism order {order} does not divide truncation order {t}")]
    OrderDoesNotDivide { order: u32, t: usize },

    #[error("endomorphism {0} failed verification: {1}")]
    EndomorphismInvalid(String, String),

    #[error("matrix entry does not belong to ring {0}")]
    EntryOutsideRing(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("non-CT base representation")]
    NonCtBase,

    #[error("negative exponent")]
    NegativeExponent,
}

pub type Result<T> = std::result::Result<T, Error>;
