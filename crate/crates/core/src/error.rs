use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("factors live at different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),

    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(i64, i64),

    #[error("need at least {needed} power sums, got {got}")]
    PowerSumsTooShort { needed: usize, got: usize },

    #[error("{functor} requires a degree-{expected} factor, got degree {got}")]
    WrongDegree {
        functor: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("division leaves a nonzero remainder at p = {0}")]
    NonzeroRemainder(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("singular Weierstrass model (discriminant 0)")]
    SingularCurve,

    #[error("p = {0} divides the discriminant")]
    BadPrime(u64),

    #[error("p = {0} is a prime of good reduction")]
    GoodPrime(u64),

    #[error("model is not minimal at p = {0}")]
    NonMinimal(u64),

    #[error("no eigenvalue supplied for p = {0}")]
    MissingEigenvalue(u64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate prime {p} on line {line}")]
    DuplicatePrime { p: u64, line: usize },

    #[error("discriminant {0} is not a supported class-number-one field")]
    UnsupportedDiscriminant(i64),

    #[error("character of half-weight {m} is not trivial on the units of discriminant {disc}")]
    UnitIncompatible { disc: i64, m: u32 },

    #[error("non-regular archimedean parameter: {0}")]
    NonRegular(String),

    #[error("invalid archimedean parameter: {0}")]
    InvalidArch(String),

    #[error("unsupported level: {0}")]
    UnsupportedLevel(String),

    #[error("exterior square at p = {0} is not divisible by the polarization factor")]
    NotSymplectic(u64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("missing local factors at primes {0:?}")]
    MissingPrimes(Vec<u64>),

    #[error("s = {s} lies outside the region of absolute convergence (need s > {bound})")]
    OutsideConvergence { s: f64, bound: f64 },

    #[error("non-integral coefficient {0}")]
    NonIntegral(String),

    #[error("{0}")]
    Input(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
