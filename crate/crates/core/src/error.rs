use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while constructing or checking a metric.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "u = {u} lies outside the metric domain |u| < {u_max} \
         (cn vanishes at the quarter period, where the conformal factor blows up)"
    )]
    OutsideDomain { u: f64, u_max: f64 },

    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `-2b^2 - K <= 0` at a sample: the logarithm in the Ricci condition is undefined.
    #[error(
        "not in family at sampled resolution: -2b^2 - K = {value} <= 0 at sample {index} (u = {u})"
    )]
    CurvatureBound { index: usize, u: f64, value: f64 },

    #[error("lambda^2 - lambda'^2 = {value} < 0 at u = {u}: profile not embeddable there")]
    NotEmbeddable { u: f64, value: f64 },

    #[error("profile is not parametrized by arc length: |(x', y')| = {speed} at sample {index}")]
    ArcLength { index: usize, speed: f64 },

    #[error("mesh provenance mismatch: {0}")]
    Provenance(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for failures caused by the numerics rather than by the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}
