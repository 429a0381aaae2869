use super::problem::ProblemSpec;
use crate::eigenbasis::{
    dln_wronskian_hat_dlambda, dphi_dlambda, ln_surface_value, phi1, phi2_hat, BasisFunction,
};
use crate::error::{Error, Result};

/// One term of the eigenfunction expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenMode {
    pub n: usize,
    pub lambda: f64,
    /// Matching constant `phi1(y0) / phi2(y0)` in the unscaled normalization.
    /// Underflows to zero for high modes, where `b_hat` remains usable.
    pub b_n: f64,
    /// Matching constant `phi1(y0) / phi2_hat(y0)`.
    pub b_hat: f64,
    /// Normalization integral of `g_n^2` against `y^(-3/4)`.
    pub c_n: f64,
    /// Expansion coefficient `y0^(-3/4) g_n(y0) / c_n`.
    pub a_hat: f64,
}

impl EigenMode {
    /// Assembles the mode for a converged eigenvalue.
    pub fn assemble(spec: &ProblemSpec, n: usize, lambda: f64) -> Result<Self> {
        let y0 = spec.y0;
        let p1 = phi1(lambda, y0)?;
        let p2 = phi2_hat(lambda, y0)?;
        let b_hat = p1 / p2;
        let b_n = match ln_surface_value(lambda) {
            Ok((l, s)) => s * b_hat * (-l).exp(),
            Err(Error::Pole(_)) => 0.0,
            Err(e) => return Err(e),
        };
        let c_n = normalization(spec, n, lambda)?;
        let a_hat = y0.powf(-0.75) * p1 / c_n;
        Ok(Self {
            n,
            lambda,
            b_n,
            b_hat,
            c_n,
            a_hat,
        })
    }
}

/// `[n! / (9/4)_n]^2 / (2n + 9/4)`, the normalization for `beta = 0`.
pub fn unabsorbed_normalization(n: usize) -> f64 {
    let ratio = (0..n).fold(1.0, |acc, k| acc * (k as f64 + 1.0) / (k as f64 + 2.25));
    ratio * ratio / (2.0 * n as f64 + 2.25)
}

/// Closed-form normalization integral
///
/// ```text
/// K(lambda, y0) = 3 beta y0^(-3/4) (1 - y0) phi1^2 [d ln W/d lambda - d ln phi1/d lambda - d ln phi2/d lambda]
/// ```
///
/// evaluated with the rescaled `W_hat` and `phi2_hat`, whose common scale
/// factor cancels between the first and last terms.
pub fn normalization_closed_form(lambda: f64, spec: &ProblemSpec) -> Result<f64> {
    let y0 = spec.y0;
    let p1 = phi1(lambda, y0)?;
    let p2 = phi2_hat(lambda, y0)?;
    let dlnw = dln_wronskian_hat_dlambda(lambda)?;
    let d1 = dphi_dlambda(BasisFunction::Phi1, lambda, y0)?;
    let d2 = dphi_dlambda(BasisFunction::Phi2Hat, lambda, y0)?;
    let bracket = p1 * p1 * dlnw - p1 * d1 - p1 * p1 / p2 * d2;
    Ok(3.0 * spec.beta * y0.powf(-0.75) * (1.0 - y0) * bracket)
}

/// Normalization `C_n` of mode `n`: closed form for `beta > 0`, the Jacobi
/// value for `beta = 0`. Fails when the result is not positive.
pub fn normalization(spec: &ProblemSpec, n: usize, lambda: f64) -> Result<f64> {
    let value = if spec.is_unabsorbed() {
        unabsorbed_normalization(n)
    } else {
        normalization_closed_form(lambda, spec)?
    };
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveNormalization { n, value })
    }
}

/// Eigenfunction `g_n(y)`: `phi1` upstream of the source and `b_hat phi2_hat`
/// downstream. For `beta = 0` both pieces coincide.
pub fn eigenfunction_g(mode: &EigenMode, spec: &ProblemSpec, y: f64) -> Result<f64> {
    if y <= spec.y0 {
        phi1(mode.lambda, y)
    } else {
        Ok(mode.b_hat * phi2_hat(mode.lambda, y)?)
    }
}
