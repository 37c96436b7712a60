use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input point set is empty")]
    EmptyInput,
    #[error("non-finite coordinate ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("direction is not a unit vector (norm {0})")]
    NonUnitDirection(f64),
    #[error("origin lies outside the polygon")]
    OriginOutside,
    #[error("matrix is not positive semi-definite")]
    NotPsd,
    #[error("model has zero drift")]
    ZeroDrift,
    #[error("model has zero variance orthogonal to the drift")]
    ZeroPerpVariance,
    #[error("model is degenerate: variance along the drift direction is zero")]
    DegenerateDrift,
    #[error("model has infinite variance")]
    InfiniteVariance,
    #[error("checkpoint {checkpoint} exceeds path length {steps}")]
    ScheduleOutOfRange { checkpoint: usize, steps: usize },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid replicate count {0}")]
    InvalidReplicates(usize),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("enumeration over {paths} paths exceeds the limit of {limit}")]
    SupportTooLarge { paths: f64, limit: f64 },
    #[error("model does not have finite support")]
    NotFiniteSupport,
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
    #[error("unmatched quantity: {0}")]
    MismatchedQuantities(String),
    #[error("invalid model specification: {0}")]
    InvalidModel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numeric failure: {0}")]
    NumericFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
