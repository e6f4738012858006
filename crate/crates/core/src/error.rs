use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across presentation handling, character tables and formulas.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("exponent {value} at position {position} is not in [0, {p})")]
    ExponentOutOfRange { position: usize, value: u32, p: u32 },

    #[error("exponent vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },

    #[error("relation for {relation} names generator {generator}; only generators after {bound} are allowed")]
    WeightViolation {
        relation: String,
        generator: usize,
        bound: usize,
    },

    #[error("generator index {index} out of range for {n} generators")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("malformed relation key {0:?}")]
    BadRelationKey(String),

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("group order {order} exceeds the order guard {guard}")]
    OrderGuard { order: u64, guard: u64 },

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup section is not valid: {0}")]
    BadSection(&'static str),

    #[error("invalid partition {0:?}: parts must be positive and non-increasing")]
    InvalidPartition(Vec<u32>),

    #[error("b = {b} exceeds log_p(exp(A)) = {max}")]
    ExponentTooLarge { b: u32, max: u32 },

    #[error("group is not a VZ group")]
    NotVz,

    #[error("group is not a Camina group")]
    NotCamina,

    #[error("no closed-form VZ case applies (d(G') = {derived_rank}, d(Z) = {center_rank}); fall back to the general algorithm")]
    NoCaseApplies { derived_rank: u32, center_rank: u32 },

    #[error("{order} is not an odd power p^(1+2n) with n >= 1 of p = {p}")]
    NotExtraspecialOrder { p: u32, order: u64 },

    #[error("inconsistent Camina data: {0}")]
    BadCaminaData(String),

    #[error("unknown group family {0:?}")]
    UnknownFamily(String),

    #[error("family {family} is only classified for p > 3 (got p = {p}); pass the small-prime override to build it anyway")]
    PrimeOutOfRange { family: String, p: u32 },

    #[error("no closed-form codegree formula applies: {0}")]
    NoFormula(String),

    #[error("presentation is over p = {found}, but p = {expected} was requested")]
    PrimeMismatch { expected: u32, found: u32 },

    #[error("eigenspace splitting failed: {0}")]
    SplittingFailed(String),

    #[error("internal error: lifted multiplicity {value} outside [0, {degree}]")]
    LiftOutOfRange { value: u64, degree: u64 },

    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
