use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter m must be positive, got {0}")]
    NonPositiveParameter(String),
    #[error("cannot divide by non-monomial scalar {0}")]
    NonUnitDivisor(String),
    #[error("order N must be at least 1")]
    ZeroOrder,
    #[error("basis index out of range: {0}")]
    BasisIndex(String),
    #[error("expected an analytic polynomial, found antiholomorphic term z̄^{j} z^{k}")]
    NotAnalytic { j: u32, k: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("S^(N,m) has no negative sectors (d = {0})")]
    NegativeSector(i64),
    #[error("quadrature rule with {nodes} nodes is not exact for degree {degree}")]
    InsufficientNodes { nodes: usize, degree: u32 },
    #[error("node count {0} outside 1..=64")]
    NodeCount(usize),
    #[error("norm sequence too short: need n up to {needed}, have {have}")]
    InsufficientTerms { needed: u32, have: u32 },
    #[error("independent computations disagree: {0}")]
    PathMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}
