use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("rotation number {q} is outside 1..{p} for p = {p_order}", p = .p_order - 1)]
    RotationOutOfRange { q: i64, p_order: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid manifold invariants for {name}: {invariant}")]
    InvalidInvariants { name: String, invariant: &'static str },
    #[error("inconsistent evidence for {name}: {reason}")]
    InconsistentEvidence { name: String, reason: &'static str },
    #[error("hypotheses not met for {name}: property (*) cannot be derived from the recorded evidence")]
    HypothesesNotMet { name: String },
    #[error("search window is empty after applying sphere-square caps")]
    EmptyWindow,
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}
