use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result would overflow or underflow the working float range.
    #[error("range error: {0}")]
    Range(String),

    #[error("pole at z = {re}{im:+}i", re = .0.re, im = .0.im)]
    Pole(Complex64),

    /// A ratio denominator fell below the configured minimum modulus.
    #[error("singular point at z = {re}{im:+}i (|denominator| = {modulus:e})", re = .z.re, im = .z.im)]
    Singular { z: Complex64, modulus: f64 },

    /// `E(x) = 1`, where the convolution kernel parameter is undefined.
    #[error("degenerate boundary direction x = {re}{im:+}i", re = .0.re, im = .0.im)]
    DegenerateDirection(Complex64),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("could not construct a non-member: {0}")]
    Construction(String),

    /// The convex reconstruction would need a `log z` term outside the Σ-basis.
    #[error("log obstruction: linear exp-series coefficient {re:e}{im:+e}i is not zero", re = .0.re, im = .0.im)]
    LogObstruction(Complex64),

    #[error("series did not reach the requested tolerance within {0} terms")]
    NonConvergent(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
