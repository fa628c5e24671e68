use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A pole was hit: some denominator evaluated to zero at the requested point.
    #[error("division by zero while evaluating {0}")]
    Singular(String),

    /// Two dynamical parameters coincide, so `D(q)` is not invertible.
    #[error("dynamical parameters are not pairwise distinct (q[{0}] == q[{1}])")]
    DegenerateParams(usize, usize),

    /// A Laurent coefficient above the known truncation order was requested.
    #[error("coefficient of degree {requested} is outside the known window (truncation order {order})")]
    WindowTooNarrow { requested: i64, order: i64 },

    /// An exact Laurent polynomial with several terms has an infinite inverse.
    #[error("inverse of an exact multi-term series needs a truncation order")]
    UnboundedInverse,

    #[error("series in different variables: {0} vs {1}")]
    VariableMismatch(String, String),

    #[error("invalid slot specification: {0}")]
    InvalidSlots(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("family {family} does not support N = {n}")]
    UnsupportedN { family: String, n: usize },

    #[error("family {family} requires parameter {param}")]
    MissingParam { family: String, param: String },

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("unknown check {0:?}")]
    UnknownCheck(String),

    #[error("could not parse rational {0:?}")]
    ParseRational(String),

    #[error("no non-singular sample point found after {0} attempts")]
    SamplingExhausted(usize),
}

impl Error {
    /// Errors that mean "this sample point sits on a pole"; the verifier
    /// resamples on these instead of failing.
    pub fn is_singular_point(&self) -> bool {
        matches!(self, Error::Singular(_) | Error::DegenerateParams(..))
    }
}
