use thiserror::Error;

/// Every failure the engines can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("infinite product requested from the exact-point engine")]
    InfiniteLengthInEngineA,
    #[error("infinite product with base q-exponent {0} does not converge as a power series")]
    NonconvergentTruncation(i64),
    #[error("division by zero while evaluating {0}")]
    PoleHit(String),
    #[error("very-well-poised kernel is singular at a = 1")]
    KernelSingularity,
    #[error("cannot bound the summation indices: {0}")]
    BoundDerivationFailure(String),
    #[error("no admissible sample point after {0} retries")]
    SamplingExhausted(usize),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("family parameter {param} out of range for {id}")]
    FamilyParamOutOfRange { id: String, param: u32 },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
