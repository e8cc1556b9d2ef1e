use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypergeometric series diverges at z = {z} (requires z < 1)")]
    Divergent { z: f64 },

    #[error("hypergeometric function has a pole: c = {c} is a non-positive integer")]
    Pole { c: f64 },

    #[error(
        "series not converged after {terms} terms (partial sum {partial_sum}, estimated error {error_estimate})"
    )]
    SeriesNonConvergence {
        terms: usize,
        partial_sum: f64,
        error_estimate: f64,
    },

    #[error(
        "quadrature not converged after {subdivisions} subdivisions (best estimate {value}, estimated error {error_estimate})"
    )]
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
