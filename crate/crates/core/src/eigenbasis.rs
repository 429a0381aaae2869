//! Fundamental solutions of the separated spatial equation
//!
//! ```text
//! y(1-y) phi'' + (1-5y)/4 phi' + (lambda y + y - 1)/(4y) phi = 0
//! ```
//!
//! * `phi1 = y F(a, b; 9/4; y)` is regular at `y = 0`.
//! * `phi1_star = y^(-1/4) F(a-5/4, b-5/4; -1/4; y)` is the second solution at `y = 0`.
//! * `phi2` is the solution that stays finite at `y = 1`.
//!
//! The solution finite at `y = 1` is `phi2 = Phi(lambda) * y F(a, b; 1; 1-y)`
//! with `Phi(lambda) = Gamma(1-a) Gamma(b) / (sqrt(2) pi)`. Most of the crate
//! works with the rescaled `phi2_hat = phi2 / Phi`, which is normalised to
//! `phi2_hat(1) = 1` and never overflows. Ratios such as the eigenvalue
//! condition and the normalization integral do not depend on the scale.
//!
//! For `nu = -a >= 3` the direct series lose accuracy to cancellation, so the
//! functions are obtained from the three-term Jacobi recurrence in the degree
//! `nu`, seeded at the fractional part of `nu`.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::specfun::{
    digamma, gamma, hyp_ladder, hyp2f1_series, ln_gamma, logcase_unchecked, rgamma, rgamma_product, sin_pi,
    Y_SWITCH,
};

/// Third hypergeometric parameter, `c = 9/4`.
pub const C_PARAM: f64 = 2.25;
/// Smallest admissible separation constant.
pub const LAMBDA_MIN: f64 = -17.0 / 16.0;

const GAMMA_MINUS_QUARTER: f64 = -4.901_666_809_860_710_6;
const GAMMA_NINE_QUARTERS: f64 = 1.133_003_096_319_346_3;
const LADDER_MIN_NU: f64 = 3.0;

/// The `(lambda, a, b, c)` bundle with `a + b = c = 9/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SpectralParams {
    /// `sqrt(17 + 16 lambda)`
    pub fn root(&self) -> f64 {
        8.0 * (self.b - 1.125)
    }

    /// Degree `nu = -a` of the associated Jacobi function.
    pub fn nu(&self) -> f64 {
        -self.a
    }
}

pub fn spectral_params(lambda: f64) -> Result<SpectralParams> {
    if !(lambda >= LAMBDA_MIN) || !lambda.is_finite() {
        return Err(Error::Domain {
            what: "lambda",
            value: lambda,
            domain: "[-17/16, inf)",
        });
    }
    let s = (17.0 + 16.0 * lambda).sqrt();
    Ok(SpectralParams {
        lambda,
        a: (9.0 - s) / 8.0,
        b: (9.0 + s) / 8.0,
        c: C_PARAM,
    })
}

/// Separation constant whose parameter `a` equals the argument.
pub fn lambda_of_a(a: f64) -> f64 {
    let s = 9.0 - 8.0 * a;
    (s * s - 17.0) / 16.0
}

fn check_open(y: f64) -> Result<()> {
    if y > 0.0 && y < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "y",
            value: y,
            domain: "(0, 1)",
        })
    }
}

fn check_half_open(y: f64) -> Result<()> {
    if y > 0.0 && y <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "y",
            value: y,
            domain: "(0, 1]",
        })
    }
}

// Hypergeometric factors of the three solutions for small |a|.

fn f_regular(a: f64, b: f64, y: f64) -> Result<f64> {
    if y <= Y_SWITCH {
        hyp2f1_series(a, b, C_PARAM, y)
    } else {
        logcase_unchecked(a, b, y)
    }
}

fn f_star(a: f64, b: f64, y: f64) -> Result<f64> {
    if y <= Y_SWITCH {
        hyp2f1_series(a - 1.25, b - 1.25, -0.25, y)
    } else {
        logcase_unchecked(a - 1.25, b - 1.25, y)
    }
}

/// Connection coefficients with `phi2_hat = c1 phi1 - c2 phi1_star`.
fn connection(a: f64, b: f64) -> (f64, f64) {
    let k = SQRT_2 * PI;
    let c1 = k * rgamma(1.0 - a) * rgamma(1.0 - b) / GAMMA_NINE_QUARTERS;
    let c2 = k * rgamma_product(a, b) / GAMMA_MINUS_QUARTER;
    (c1, c2)
}

fn f_downstream(a: f64, b: f64, y: f64) -> Result<f64> {
    if y >= Y_SWITCH {
        hyp2f1_series(a, b, 1.0, 1.0 - y)
    } else {
        let (c1, c2) = connection(a, b);
        Ok(c1 * f_regular(a, b, y)? - c2 * y.powf(-1.25) * f_star(a, b, y)?)
    }
}

/// Splits `nu` into the seed degree `theta` in `[0, 1)` and the number of
/// ladder steps.
fn ladder_split(nu: f64) -> (f64, u32) {
    let k = nu.floor();
    (nu - k, k as u32)
}

fn seed_params(theta: f64) -> [(f64, f64); 2] {
    [(-theta, theta + C_PARAM), (-theta - 1.0, theta + 1.0 + C_PARAM)]
}

enum Kind {
    Regular,
    Star,
    Downstream,
}

/// Hypergeometric factor of the requested solution at `(lambda, y)`.
fn hyp_factor(p: &SpectralParams, y: f64, kind: Kind) -> Result<f64> {
    let nu = p.nu();
    if nu < LADDER_MIN_NU {
        return match kind {
            Kind::Regular => f_regular(p.a, p.b, y),
            Kind::Star => f_star(p.a, p.b, y),
            Kind::Downstream => f_downstream(p.a, p.b, y),
        };
    }
    let (theta, steps) = ladder_split(nu);
    let seeds = seed_params(theta);
    let x = 1.0 - 2.0 * y;
    let value = match kind {
        Kind::Regular => {
            let f0 = f_regular(seeds[0].0, seeds[0].1, y)?;
            let f1 = f_regular(seeds[1].0, seeds[1].1, y)?;
            hyp_ladder(1.25, 0.0, x, theta, f0, f1, steps)
        }
        Kind::Star => {
            let f0 = f_star(seeds[0].0, seeds[0].1, y)?;
            let f1 = f_star(seeds[1].0, seeds[1].1, y)?;
            hyp_ladder(-1.25, 0.0, x, theta + 1.25, f0, f1, steps)
        }
        Kind::Downstream => {
            let f0 = f_downstream(seeds[0].0, seeds[0].1, y)?;
            let f1 = f_downstream(seeds[1].0, seeds[1].1, y)?;
            hyp_ladder(0.0, 1.25, -x, theta, f0, f1, steps)
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow("Jacobi ladder"))
    }
}

/// Solution regular at `y = 0`: `phi1 = y F(a, b; 9/4; y)`.
pub fn phi1(lambda: f64, y: f64) -> Result<f64> {
    check_open(y)?;
    let p = spectral_params(lambda)?;
    Ok(y * hyp_factor(&p, y, Kind::Regular)?)
}

/// Second solution at `y = 0`: `phi1_star = y^(-1/4) F(a-5/4, b-5/4; -1/4; y)`.
pub fn phi1_star(lambda: f64, y: f64) -> Result<f64> {
    check_open(y)?;
    let p = spectral_params(lambda)?;
    Ok(y.powf(-0.25) * hyp_factor(&p, y, Kind::Star)?)
}

/// Downstream solution rescaled to unit value at `y = 1`:
/// `phi2_hat = y F(a, b; 1; 1 - y)`.
pub fn phi2_hat(lambda: f64, y: f64) -> Result<f64> {
    check_half_open(y)?;
    let p = spectral_params(lambda)?;
    Ok(y * hyp_factor(&p, y, Kind::Downstream)?)
}

/// `(ln|Phi(lambda)|, sign)` for the scale factor `Phi = Gamma(1-a) Gamma(b) / (sqrt(2) pi)`.
pub fn ln_surface_value(lambda: f64) -> Result<(f64, f64)> {
    let p = spectral_params(lambda)?;
    let (l1, s1) = ln_gamma(1.0 - p.a)?;
    let (l2, s2) = ln_gamma(p.b)?;
    Ok((l1 + l2 - (SQRT_2 * PI).ln(), s1 * s2))
}

/// `phi2(lambda, 1) = Phi(lambda)`.
pub fn surface_value(lambda: f64) -> Result<f64> {
    let (l, s) = ln_surface_value(lambda)?;
    let v = s * l.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("phi2 scale factor"))
    }
}

/// The limit `pi [cot(pi a) + cot(pi b)] / (Gamma(a) Gamma(1-b))` of `phi2` at `y = 1`.
///
/// Singular when `a` is an integer; [`surface_value`] is the regular form.
pub fn surface_value_cot_form(lambda: f64) -> Result<f64> {
    let p = spectral_params(lambda)?;
    let cot = |x: f64| (PI * x).cos() / sin_pi(x);
    Ok(PI * (cot(p.a) + cot(p.b)) * rgamma(p.a) * rgamma(1.0 - p.b))
}

/// Downstream solution finite at `y = 1`, in its unscaled form.
pub fn phi2(lambda: f64, y: f64) -> Result<f64> {
    let scale = surface_value(lambda)?;
    Ok(scale * phi2_hat(lambda, y)?)
}

/// `Gamma(1-a) / Gamma(a)`, exactly zero when `a` is a nonpositive integer.
fn gamma_reflection_ratio(a: f64) -> Result<f64> {
    if a >= 0.5 {
        Ok(gamma(1.0 - a)? * rgamma(a))
    } else {
        let s = sin_pi(a);
        if s == 0.0 {
            return Ok(0.0);
        }
        let (l, _) = ln_gamma(1.0 - a)?;
        Ok(s / PI * (2.0 * l).exp())
    }
}

/// Closed-form Wronskian `phi1 phi2' - phi2 phi1'`.
///
/// Vanishes exactly when `a` is a nonpositive integer.
pub fn wronskian(lambda: f64, y: f64) -> Result<f64> {
    check_open(y)?;
    let p = spectral_params(lambda)?;
    let ratio = gamma_reflection_ratio(p.a)?;
    Ok(1.25 * ratio / GAMMA_MINUS_QUARTER * y.powf(-0.25) / (1.0 - y))
}

/// Wronskian of `phi1` and `phi2_hat`, i.e. `wronskian / Phi`.
pub fn wronskian_hat(lambda: f64, y: f64) -> Result<f64> {
    check_open(y)?;
    let p = spectral_params(lambda)?;
    Ok(wronskian_hat_constant(&p) * y.powf(-0.25) / (1.0 - y))
}

/// `y^(1/4) (1 - y) wronskian_hat`, which does not depend on `y`.
pub(crate) fn wronskian_hat_constant(p: &SpectralParams) -> f64 {
    1.25 * SQRT_2 * PI * rgamma_product(p.a, p.b) / GAMMA_MINUS_QUARTER
}

/// `d ln|W| / d lambda = [Psi(a) + Psi(1-a)] / sqrt(17 + 16 lambda)`.
pub fn dln_wronskian_dlambda(lambda: f64) -> Result<f64> {
    let p = spectral_params(lambda)?;
    Ok((digamma(p.a)? + digamma(1.0 - p.a)?) / p.root())
}

/// `d ln|W_hat| / d lambda = [Psi(a) - Psi(b)] / sqrt(17 + 16 lambda)`.
pub fn dln_wronskian_hat_dlambda(lambda: f64) -> Result<f64> {
    let p = spectral_params(lambda)?;
    Ok((digamma(p.a)? - digamma(p.b)?) / p.root())
}

/// Selects a basis function for differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFunction {
    Phi1,
    Phi2,
    Phi2Hat,
}

impl BasisFunction {
    pub fn eval(self, lambda: f64, y: f64) -> Result<f64> {
        match self {
            Self::Phi1 => phi1(lambda, y),
            Self::Phi2 => phi2(lambda, y),
            Self::Phi2Hat => phi2_hat(lambda, y),
        }
    }
}

/// Finite-difference step used for `lambda` derivatives.
pub fn lambda_step(lambda: f64) -> f64 {
    1e-5 * (1.0 + lambda.abs())
}

/// `d phi / d lambda` by central differences at `h` and `h/2`, combined by
/// Richardson extrapolation.
pub fn dphi_dlambda(which: BasisFunction, lambda: f64, y: f64) -> Result<f64> {
    let h = lambda_step(lambda);
    let central = |h: f64| -> Result<f64> {
        Ok((which.eval(lambda + h, y)? - which.eval(lambda - h, y)?) / (2.0 * h))
    };
    let d1 = central(h)?;
    let d2 = central(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}
