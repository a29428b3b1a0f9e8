use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("base power {base_power} does not divide extension degree {degree}")]
    BadTower { degree: u32, base_power: u32 },
    #[error("field or search space too large: {0}")]
    TooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{d} does not divide {order}")]
    NotADivisor { d: u64, order: u64 },
    #[error("reduction modulo the zero polynomial")]
    ModByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("numerator and denominator both vanish at the evaluation point")]
    IndeterminatePoint,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("the pair relation needs distinct polynomials")]
    EqualPolynomials,
    #[error("beta is not in the norm-one subgroup")]
    BetaNotInMu,
    #[error("the associate equals the input; use the self relation")]
    SelfAssociatedResult,
    #[error("beta must satisfy beta^(q+1) = 1")]
    BadBeta,
    #[error("invalid gamma: {0}")]
    BadGamma(String),
    #[error("delta must lie outside the base field")]
    BadDelta,
    #[error("polynomials are not associated for the given beta")]
    NotAssociated,
    #[error("polynomial is not self-associated for the given (beta, t)")]
    NotSelfAssociated,
    #[error("coefficients do not have the required symmetric shape")]
    BadShape,
    #[error("invalid binomial parameters: {0}")]
    BadBinomialParams(String),
    #[error("parameter constraint violated: {0}")]
    ParamConstraintViolated(String),
    #[error("precondition ({0}) failed")]
    ConditionFailed(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("required relation failed: {0}")]
    RelationFailed(String),
    #[error("exponent parameters out of range: {0}")]
    BadExponentRange(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("parameter `{0}` is not used by this family")]
    ExtraneousParam(String),
    #[error("parse error: {0}")]
    Parse(String),
}
