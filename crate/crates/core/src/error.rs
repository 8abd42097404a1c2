use thiserror::Error;

/// Errors raised by construction and by the lifting algorithms.
///
/// Mathematical negatives (a hypothesis that checks as false, a search that
/// exhausts its cap) are ordinary values, not errors; this type covers
/// malformed inputs and violated preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a prime: {0}")]
    NotPrime(u64),

    #[error("modulus overflow: p^k = {p}^{k} does not fit the exact kernel")]
    ModulusOverflow { p: u64, k: u32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("multiplication table is not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("unit law fails at basis index {0}")]
    BrokenUnit(usize),

    #[error("ideal is not proper: it contains the unit")]
    ImproperIdeal,

    #[error("filtration is invalid: {0}")]
    BadFiltration(String),

    #[error("filtration hypotheses are not verified-true: {0}")]
    HypothesesUnverified(String),

    #[error("quotient is not representable over a single coefficient ring: {0}")]
    QuotientNotRepresentable(String),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("residue mismatch: {0}")]
    ResidueMismatch(String),

    #[error("containment violated during lifting: {0}")]
    ContainmentViolation(String),

    #[error("residue factorization is not certified coprime within the degree cap (inconclusive)")]
    CoprimalityInconclusive,

    #[error("search space over cap: {0}")]
    SearchSpaceOverCap(String),

    #[error("property is undecidable for this configuration: {0}")]
    Undecidable(String),

    #[error("scalar ring must be a field for this operation, got {0}")]
    FieldRequired(String),

    #[error("relation maps to a nonzero element: {0}")]
    RelationViolation(String),

    #[error("morphism check failed: {0}")]
    MorphismInvalid(String),

    #[error("extension construction failed: {0}")]
    ExtensionFailed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zero polynomial has no separation level")]
    ZeroPolynomial,

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
