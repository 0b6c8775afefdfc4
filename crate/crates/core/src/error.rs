use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("modulus {0} is outside the supported range 2 <= p < 2^62")]
    ModulusOutOfRange(u64),
    #[error("polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("zero polynomial has no discriminant")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility could not be established: {0}")]
    InconclusiveIrreducibility(String),
    #[error("{p} is an index prime for {poly}: splitting is not determined by this polynomial")]
    IndexPrime { poly: String, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("local invariants do not sum to 0 in Q/Z (sum = {0})")]
    ReciprocityViolation(String),
    #[error("bad archimedean invariant: {0}")]
    BadArchimedean(String),
    #[error("invalid place: {0}")]
    BadPlace(String),
    #[error("place {0} listed twice")]
    DuplicatePlace(String),
    #[error("classes live over different fields")]
    FieldMismatch,
    #[error("splitting is not uniform: {0}")]
    NonUniformSplitting(String),
    #[error("relative local degree is not integral: {0}")]
    NonIntegralRelativeDegree(String),
    #[error("fields are not splitting-equivalent: {0}")]
    NotSplittingEquivalent(String),
    #[error("transport is ambiguous: {0}")]
    AmbiguousTransport(String),

    #[error("ramification set has odd cardinality {0}")]
    OddRamification(usize),
    #[error("complex place {0} cannot ramify")]
    ComplexRamification(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("base field must be Q")]
    BaseNotRational,

    #[error("algebra is totally definite")]
    TotallyDefinite,
    #[error("missing trusted flags: {0}")]
    MissingTrustedFlags(String),

    #[error("invalid fraction: {0}")]
    BadFraction(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
