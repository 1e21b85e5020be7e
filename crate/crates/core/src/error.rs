use thiserror::Error;

/// Errors produced by the library. Every fallible public operation returns
/// [`Result<T>`](crate::Result).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero polynomial is not a valid input to {0}")]
    ZeroPolynomial(&'static str),

    #[error("constraint functional has zero total mass")]
    ZeroMass,

    #[error("incompatible units: {0}")]
    UnitMismatch(String),

    #[error("Gram matrix is not positive at degree {degree} (norm = {norm:e})")]
    NonPositiveGram { degree: usize, norm: f64 },

    #[error("quadrature diverged for moment {k}: order {order} gives {low:e}, order {order2} gives {high:e}")]
    QuadratureDivergence {
        k: usize,
        order: usize,
        order2: usize,
        low: f64,
        high: f64,
    },

    #[error("quadrature disagreement across orders: {0}")]
    QuadratureDisagreement(String),

    #[error("P_{n}(1) = 0, cannot rescale to endpoint normalization")]
    ZeroAtEndpoint { n: usize },

    #[error("Legendre-type closed forms are only available for d in 1..=3 (got d = {0})")]
    UnsupportedDimension(u32),

    #[error("all classical averages vanish up to order {0}")]
    ZeroAverages(usize),

    #[error("ground state is degenerate: E_Z = {below}, E_Z+1 = {above}")]
    DegenerateGround { below: f64, above: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("K = 0 is a removable singularity of the centrifuge mode")]
    RemovableSingularity,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("identity check failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
