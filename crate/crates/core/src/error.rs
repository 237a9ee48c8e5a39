use thiserror::Error;

/// Why a type function fails to describe a regular system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationReason {
    /// `t(p, a)` is zero or does not divide `a`.
    TypeNotDivisor,
    /// `t(p, i*t) != t` for some `1 <= i <= a/t`.
    ChainBroken,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("system `{system}` is not regular at {p}^{a}: {reason:?} (type {t})")]
pub struct Violation {
    pub system: String,
    pub p: u64,
    pub a: u32,
    pub t: u32,
    pub reason: ViolationReason,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a positive integer, got 0")]
    ZeroArgument,

    #[error(transparent)]
    Violation(#[from] Violation),

    #[error("set `{0}` does not contain 1, so mu_(A,S) has no A-convolution inverse")]
    SetExcludesOne(String),

    #[error("inexact polynomial division (remainder of degree {remainder_degree})")]
    InexactDivision { remainder_degree: usize },

    #[error("constructions of Phi_(A,S,{n}) disagree: {detail}")]
    RouteMismatch { n: u64, detail: String },

    #[error(
        "numeric oracle exhausted its precision at n = {n}: coefficient of x^{index} is off an integer by {distance:e}"
    )]
    PrecisionExhausted { n: u64, index: usize, distance: f64 },

    #[error("n = {n} exceeds the numeric oracle bound {max_n}")]
    OracleBound { n: u64, max_n: u64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("coefficient recursion produced a non-integer at x^{k}")]
    InexactCoefficient { k: usize },

    #[error("{n} is not a product of A-primitive integers")]
    NotPrimitiveProduct { n: u64 },

    #[error("character sum is not rational (modulus {modulus})")]
    NonRationalResult { modulus: u64 },

    #[error("class sum for class {class} mod {n} is not a rational integer")]
    NonIntegerClassSum { n: u64, class: u64 },

    #[error("character mod {0} is not primitive")]
    NotPrimitive(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
