use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("quadrature tolerance not met: best estimate {estimate:e} with error {abs_error:e}")]
    ToleranceNotMet { estimate: f64, abs_error: f64 },

    #[error("integrand is not finite at y = {0}")]
    NonFiniteIntegrand(f64),

    #[error("eigenvalue search: expected one root in window {window}, root {index} landed at lambda = {lambda}")]
    MissedRoot {
        window: usize,
        index: usize,
        lambda: f64,
    },

    #[error("eigenvalue search found only {found} of {wanted} roots")]
    TooFewRoots { found: usize, wanted: usize },

    #[error("normalization of mode {n} is not positive ({value:e}); eigenvalue is likely misconverged")]
    NonPositiveNormalization { n: usize, value: f64 },

    #[error("resonance: {0}")]
    Resonance(String),

    #[error("moment of order {ell} diverges: lambda_0 = {lambda0} <= ell + 1")]
    DivergentMoment { ell: f64, lambda0: f64 },

    #[error("value overflows double precision: {0}")]
    Overflow(&'static str),

    #[error("invalid source spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
