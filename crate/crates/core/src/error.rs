use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} does not belong to the {model} model")]
    ElementModelMismatch { element: String, model: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("model has {n} elements, above the exhaustive limit {limit} (use --force)")]
    ModelTooLarge { n: usize, limit: usize },
    #[error("supremum of n*a is not representable in this model")]
    UnrepresentableSupremum,
    #[error("map is not additive: {0}")]
    NotAdditive(String),
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("map does not send 0 to 0")]
    NotNormalized,
    #[error("first functional is not dominated by the second at {0}")]
    NotDominated(String),
    #[error("comparison search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("family is not upward directed: {0}")]
    NotDirected(String),
    #[error("chain is not increasing at position {0}")]
    NotIncreasing(usize),
    #[error("no index within the chain satisfies the bound")]
    NoIndexWithinChain,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("grid exhausted: {0}")]
    GridExhausted(String),
    #[error("model is not simple: {0}")]
    NotSimple(String),
    #[error("proportionality h <= n*g not verified for n <= {0}")]
    ProportionalityUnverified(u64),
    #[error("lattice operation failed: {0}")]
    Lattice(String),
    #[error("term error: {0}")]
    Term(String),
    #[error("representative functionals do not separate: {0}")]
    RepresentativeMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
