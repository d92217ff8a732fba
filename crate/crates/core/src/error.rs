use thiserror::Error;

/// Errors raised by the algebra and code layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoeff(u64),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("ambient elements belong to different variants")]
    VariantMismatch,

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("ideal parameters out of range: {0}")]
    SpecOutOfRange(String),

    #[error("generators cannot be normalized: {0}")]
    NotAnIdealForm(String),

    #[error("code has {size} codewords, above the cap of {cap}")]
    CapExceeded { size: String, cap: u64 },

    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),

    #[error("self-dual codes need p = 2 and (1+2w)^2 = 1 mod 2^s; got p = {p}, s = {s}, w = {w}")]
    NotSelfDualCompatible { p: u64, s: u32, w: u64 },

    #[error("set of size {size} exceeds the oracle bound {bound}")]
    BoundExceeded { size: String, bound: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("output closed")]
    OutputClosed,
}

pub type Result<T> = std::result::Result<T, Error>;
