use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar domains do not match: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("domain {0} is not a field")]
    NotAField(String),
    #[error("invalid scalar domain: {0}")]
    InvalidDomain(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} has no inverse in its domain")]
    NotInvertible(String),
    #[error("matrix is {0}x{1}, expected a square matrix")]
    NotSquare(usize, usize),
    #[error("matrix dimensions do not agree: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse `{input}`: {message}")]
    Syntax { input: String, message: String },
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("validation failed: {axiom}")]
    Validation { axiom: String },
    #[error("enumerating {0} vectors exceeds the bound")]
    EnumerationTooLarge(String),
    #[error("not a Hopf ideal: {0}")]
    NotAHopfIdeal(String),
    #[error("elements live in different Ore towers")]
    TowerMismatch,
    #[error("element mentions variable {var} at or above level {level}")]
    VariableOutOfLevel { var: String, level: usize },
    #[error("total degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },
    #[error("annihilator chain did not stabilise within {0} steps")]
    StabilizationNotReached(usize),
    #[error("action has rank {rank} < {dim} on monomials of degree <= {degree}")]
    NotFaithfulAtBound { rank: usize, dim: usize, degree: u32 },
    #[error("element {0} is not central")]
    CentralityFailed(String),
    #[error("no p-polynomial found with k <= {0}")]
    PPolynomialSearchExceeded(u32),
    #[error("algebra is not free over the base: {0}")]
    NotFreeOverBase(String),
    #[error("division by the centrals is not unique: {0}")]
    ReductionMismatch(String),
    #[error("Hopf algebra is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
