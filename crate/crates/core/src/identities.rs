//! Energy moments and the closed-form series identities of the expansion.
//!
//! Moments are reported in the same dimensionless convention as the Green's
//! function: the factor `N0 e0^(l-2) / (pi r0^2 v_c)` is stripped, so that
//! `moment_series` is literally `integral e^l f_hat de` term by term.

use std::f64::consts::{PI, SQRT_2};

use crate::eigenbasis::{phi1, phi2_hat, spectral_params, wronskian_hat};
use crate::error::{Error, Result};
use crate::spectral::{build_evaluator, eigenfunction_g, GreensEvaluator, ProblemSpec, GREENS_PREFACTOR};
use crate::specfun::{gamma, jacobi_p_all, rgamma_product};

const RESONANCE_RTOL: f64 = 1e-10;

/// Moment order `l` with its parameter `a_l = (9 - sqrt(33 + 16 l)) / 8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSpec {
    pub ell: f64,
    pub a_ell: f64,
}

impl MomentSpec {
    pub fn new(ell: f64) -> Result<Self> {
        if !(33.0 + 16.0 * ell >= 0.0) || !ell.is_finite() {
            return Err(Error::Domain {
                what: "ell",
                value: ell,
                domain: "[-33/16, inf)",
            });
        }
        Ok(Self {
            ell,
            a_ell: (9.0 - (33.0 + 16.0 * ell).sqrt()) / 8.0,
        })
    }

    /// Separation constant `l + 1` at which the moment equation is solved.
    pub fn lambda(&self) -> f64 {
        self.ell + 1.0
    }

    pub fn b_ell(&self) -> f64 {
        2.25 - self.a_ell
    }
}

/// How the left-hand series was summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummationMethod {
    /// Plain partial sum of the first `terms_used` terms.
    Partial,
    /// Cesaro `(C,1)` mean of the partial sums, i.e. term `n` weighted by `1 - n/N`.
    Cesaro,
}

impl SummationMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Partial => "partial",
            Self::Cesaro => "cesaro",
        }
    }
}

/// Comparison of a truncated series with its closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_gap: f64,
    pub terms_used: usize,
    pub method: SummationMethod,
}

impl IdentityReport {
    pub fn new(lhs: f64, rhs: f64, terms_used: usize, method: SummationMethod) -> Self {
        let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        Self {
            lhs,
            rhs,
            rel_gap: (lhs - rhs).abs() / scale,
            terms_used,
            method,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rel_gap <= tol
    }
}

/// Denominator `3 beta phi1 phi2_hat - 4 y0 W_hat` at `lambda = l + 1`,
/// guarded against resonance.
fn moment_denominator(ms: &MomentSpec, spec: &ProblemSpec) -> Result<f64> {
    let lam = ms.lambda();
    let y0 = spec.y0;
    let absorb = 3.0 * spec.beta * phi1(lam, y0)? * phi2_hat(lam, y0)?;
    let wr = 4.0 * y0 * wronskian_hat(lam, y0)?;
    let den = absorb - wr;
    let scale = absorb.abs() + wr.abs();
    if den.abs() <= RESONANCE_RTOL * scale || scale == 0.0 {
        return Err(Error::Resonance(format!(
            "l + 1 = {lam} solves the eigenvalue condition for beta = {}, y0 = {}",
            spec.beta, y0
        )));
    }
    Ok(den)
}

/// Kernel `phi1(l+1, y_min) phi2_hat(l+1, y_max) / den` shared by the
/// closed-form moment and the summation formula.
fn closed_kernel(ms: &MomentSpec, spec: &ProblemSpec, y: f64) -> Result<f64> {
    let den = moment_denominator(ms, spec)?;
    let lam = ms.lambda();
    let (lo, hi) = if y <= spec.y0 { (y, spec.y0) } else { (spec.y0, y) };
    Ok(phi1(lam, lo)? * phi2_hat(lam, hi)? / den)
}

/// Closed-form moment `I_hat_l(y)`.
pub fn moment_closed(ms: &MomentSpec, spec: &ProblemSpec, y: f64) -> Result<f64> {
    check_y(y)?;
    Ok(GREENS_PREFACTOR * closed_kernel(ms, spec, y)? / (1.0 - spec.y0))
}

/// Moment from the eigenfunction expansion,
/// `(12/7) sum_n A_hat_n g_n(y) / (lambda_n - l - 1)`.
pub fn moment_series(ms: &MomentSpec, ev: &GreensEvaluator, y: f64) -> Result<f64> {
    check_y(y)?;
    let lambda0 = ev.lambda0();
    if lambda0 <= ms.lambda() {
        return Err(Error::DivergentMoment {
            ell: ms.ell,
            lambda0,
        });
    }
    let mut sum = 0.0;
    for mode in &ev.modes[..ev.n_terms] {
        sum += mode.a_hat * eigenfunction_g(mode, &ev.spec, y)? / (mode.lambda - ms.lambda());
    }
    Ok(GREENS_PREFACTOR * sum)
}

fn check_y(y: f64) -> Result<()> {
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

/// Checks the summation formula
///
/// ```text
/// sum_n g_n(y0) g_n(y) / ((lambda_n - l - 1) C_n)
///     = y0^(3/4) phi1(l+1, y_min) phi2(l+1, y_max) / ((1 - y0) [3 beta phi1 phi2 - 4 y0 W])
/// ```
///
/// with `n_sum` eigenmodes. For `beta = 0` this reduces to the Jacobi form.
pub fn check_summation_formula(spec: &ProblemSpec, ell: f64, y: f64, n_sum: usize) -> Result<IdentityReport> {
    let ev = build_evaluator(spec, n_sum)?;
    check_summation_formula_with(&ev, ell, y, n_sum)
}

/// [`check_summation_formula`] reusing the first `n_sum` modes of an
/// existing evaluator.
pub fn check_summation_formula_with(ev: &GreensEvaluator, ell: f64, y: f64, n_sum: usize) -> Result<IdentityReport> {
    check_y(y)?;
    let ms = MomentSpec::new(ell)?;
    let spec = ev.spec;
    if n_sum == 0 || n_sum > ev.modes.len() {
        return Err(Error::InvalidArgument(format!(
            "n_sum = {n_sum} but {} modes are available",
            ev.modes.len()
        )));
    }
    let mut lhs = 0.0;
    for mode in &ev.modes[..n_sum] {
        let gap = mode.lambda - ms.lambda();
        if gap.abs() <= RESONANCE_RTOL * mode.lambda.abs().max(1.0) {
            return Err(Error::Resonance(format!("l + 1 = {} equals eigenvalue {}", ms.lambda(), mode.n)));
        }
        let g0 = eigenfunction_g(mode, &spec, spec.y0)?;
        let gy = eigenfunction_g(mode, &spec, y)?;
        lhs += g0 * gy / (gap * mode.c_n);
    }
    let rhs = spec.y0.powf(0.75) / (1.0 - spec.y0) * closed_kernel(&ms, &spec, y)?;
    Ok(IdentityReport::new(lhs, rhs, n_sum, SummationMethod::Partial))
}

fn generating_denominators(ell: f64, n_sum: usize) -> Result<Vec<f64>> {
    (0..n_sum)
        .map(|n| {
            let n = n as f64;
            let d = 4.0 * n * n + 9.0 * n + 3.0 - ell;
            if d.abs() <= RESONANCE_RTOL * (4.0 * n * n + 9.0 * n + 3.0).max(ell.abs()) {
                Err(Error::Resonance(format!("l = {ell} equals 4n^2 + 9n + 3 at n = {n}")))
            } else {
                Ok(d)
            }
        })
        .collect()
}

fn check_unit(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: v,
            domain: "(0, 1)",
        })
    }
}

fn check_terms(n_sum: usize) -> Result<()> {
    if n_sum == 0 {
        Err(Error::InvalidArgument("n_sum must be positive".into()))
    } else {
        Ok(())
    }
}

/// Bilinear generating function of `P_n^(5/4,0)`:
///
/// ```text
/// sum_n (9 + 8n) P_n(1 - 2 y0) P_n(1 - 2y) / (4n^2 + 9n + 3 - l)
///     = (16/5) Gamma(3/4) Gamma(a_l) Gamma(b_l) / (sqrt(2) pi) phi1(l+1, y_min) phi2_hat(l+1, y_max) / (y y0)
/// ```
///
/// Summed as a plain partial sum.
pub fn bilinear_generating(y0: f64, y: f64, ell: f64, n_sum: usize) -> Result<IdentityReport> {
    check_unit("y0", y0)?;
    check_unit("y", y)?;
    check_terms(n_sum)?;
    let ms = MomentSpec::new(ell)?;
    let dens = generating_denominators(ell, n_sum)?;
    let top = (n_sum - 1) as u32;
    let p0 = jacobi_p_all(top, y0);
    let p = jacobi_p_all(top, y);
    let lhs: f64 = (0..n_sum)
        .map(|n| (9.0 + 8.0 * n as f64) * p0[n] * p[n] / dens[n])
        .sum();
    let lam = ms.lambda();
    let (lo, hi) = if y <= y0 { (y, y0) } else { (y0, y) };
    let rg = rgamma_product(ms.a_ell, ms.b_ell());
    let rhs = 16.0 / 5.0 * gamma(0.75)? / (rg * SQRT_2 * PI) * phi1(lam, lo)? * phi2_hat(lam, hi)? / (y * y0);
    Ok(IdentityReport::new(lhs, rhs, n_sum, SummationMethod::Partial))
}

/// Linear generating function of `P_n^(5/4,0)`:
///
/// ```text
/// sum_n (9 + 8n) Gamma(n + 9/4) / ((4n^2 + 9n + 3 - l) n!) P_n(1 - 2y)
///     = Gamma(a_l) Gamma(b_l) phi2_hat(l+1, y) / y
/// ```
///
/// The terms decay only like `n^(-1/4)` in magnitude with oscillating sign,
/// so the series is summed by Cesaro `(C,1)` means.
pub fn linear_generating(y: f64, ell: f64, n_sum: usize) -> Result<IdentityReport> {
    check_unit("y", y)?;
    check_terms(n_sum)?;
    let ms = MomentSpec::new(ell)?;
    let dens = generating_denominators(ell, n_sum)?;
    let p = jacobi_p_all((n_sum - 1) as u32, y);
    let big_n = n_sum as f64;
    let mut ratio = gamma(2.25)?;
    let mut lhs = 0.0;
    for n in 0..n_sum {
        let nf = n as f64;
        if n > 0 {
            ratio *= (nf + 1.25) / nf;
        }
        let weight = 1.0 - nf / big_n;
        lhs += weight * (9.0 + 8.0 * nf) * ratio / dens[n] * p[n];
    }
    let lam = ms.lambda();
    let rg = rgamma_product(ms.a_ell, ms.b_ell());
    let rhs = phi2_hat(lam, y)? / (rg * y);
    Ok(IdentityReport::new(lhs, rhs, n_sum, SummationMethod::Cesaro))
}

/// `Gamma(3/4) Gamma(9/4)` against `(5/16) pi sqrt(2)`.
pub fn gamma_identity() -> Result<IdentityReport> {
    let lhs = gamma(0.75)? * gamma(2.25)?;
    let rhs = 5.0 / 16.0 * PI * SQRT_2;
    Ok(IdentityReport::new(lhs, rhs, 1, SummationMethod::Partial))
}

/// Ensures `l + 1` is an admissible separation constant.
pub fn moment_lambda_params(ms: &MomentSpec) -> Result<crate::eigenbasis::SpectralParams> {
    spectral_params(ms.lambda())
}
