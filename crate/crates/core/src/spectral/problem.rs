use crate::eigenbasis::{phi1, phi2, phi2_hat, wronskian, wronskian_hat};
use crate::error::{Error, Result};

/// Smallest and largest admissible source position.
pub const Y0_MIN: f64 = 1e-6;
pub const Y0_MAX: f64 = 1.0 - 1e-6;

/// Dimensionless column configuration: absorption `beta` and source position `y0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub beta: f64,
    pub y0: f64,
}

impl ProblemSpec {
    pub fn new(beta: f64, y0: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::Domain {
                what: "beta",
                value: beta,
                domain: "[0, inf)",
            });
        }
        if !(Y0_MIN..=Y0_MAX).contains(&y0) {
            return Err(Error::Domain {
                what: "y0",
                value: y0,
                domain: "[1e-6, 1 - 1e-6]",
            });
        }
        Ok(Self { beta, y0 })
    }

    /// `beta = 0`: no absorption, eigenfunctions reduce to Jacobi polynomials.
    pub fn is_unabsorbed(&self) -> bool {
        self.beta == 0.0
    }

    /// Strength of the derivative jump at the source, `3 beta / (4 y0)`.
    pub fn jump_strength(&self) -> f64 {
        0.75 * self.beta / self.y0
    }
}

/// Eigenvalue condition `W(lambda, y0) - (3 beta / 4 y0) phi1 phi2` in the
/// unscaled normalization. Overflows for large `lambda`; see
/// [`eigen_residual_scaled`].
pub fn eigen_residual(lambda: f64, spec: &ProblemSpec) -> Result<f64> {
    let w = wronskian(lambda, spec.y0)?;
    Ok(w - spec.jump_strength() * phi1(lambda, spec.y0)? * phi2(lambda, spec.y0)?)
}

/// Eigenvalue condition divided by the positive-or-negative scale factor of
/// `phi2`; it has the same roots and stays finite for every `lambda`.
pub fn eigen_residual_scaled(lambda: f64, spec: &ProblemSpec) -> Result<f64> {
    let w = wronskian_hat(lambda, spec.y0)?;
    Ok(w - spec.jump_strength() * phi1(lambda, spec.y0)? * phi2_hat(lambda, spec.y0)?)
}
