use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rational {0:?}: expected \"p/q\" or an integer")]
    ParseRational(String),

    #[error("index {index} out of range: family holds degrees 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("seed degree mu = {mu} exceeds target degree nu = {nu}")]
    SeedAboveTarget { mu: usize, nu: usize },

    #[error("parameter list is empty")]
    EmptyParams,

    #[error("power-series denominator 2a+2mu+1 vanishes at mu = {mu}")]
    VanishingDenominator { mu: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integral does not converge: {0}")]
    NotIntegrable(String),

    #[error("series diverges at x = {x}, y = {y} (terms grow)")]
    Divergent { x: f64, y: f64 },

    #[error(
        "quadrature did not reach tolerance: value {value}, error estimate {error}, {nodes} nodes"
    )]
    QuadratureNotConverged {
        value: f64,
        error: f64,
        nodes: usize,
    },
}
