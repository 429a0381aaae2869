use std::f64::consts::PI;

use super::modes::{eigenfunction_g, EigenMode};
use super::problem::ProblemSpec;
use super::roots::{find_eigenvalues, MAX_EIGENVALUES};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_weighted_with_breaks, QuadratureResult, DEFAULT_REL_TOL};

/// Default truncation of the expansion.
pub const DEFAULT_TERMS: usize = 20;

/// Prefactor `12/7` of the dimensionless Green's function.
pub const GREENS_PREFACTOR: f64 = 12.0 / 7.0;

/// Ordered eigenmodes of one problem plus the truncation used for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct GreensEvaluator {
    pub spec: ProblemSpec,
    pub modes: Vec<EigenMode>,
    pub n_terms: usize,
}

/// Finds the first `n_terms` eigenvalues and assembles their modes.
pub fn build_evaluator(spec: &ProblemSpec, n_terms: usize) -> Result<GreensEvaluator> {
    if n_terms == 0 || n_terms > MAX_EIGENVALUES {
        return Err(Error::InvalidArgument(format!(
            "n_terms must be in 1..={MAX_EIGENVALUES}, got {n_terms}"
        )));
    }
    let lambdas = find_eigenvalues(spec, n_terms)?;
    GreensEvaluator::from_eigenvalues(spec, &lambdas)
}

impl GreensEvaluator {
    /// Assembles modes for externally supplied eigenvalues (for example a
    /// deliberately perturbed spectrum).
    pub fn from_eigenvalues(spec: &ProblemSpec, lambdas: &[f64]) -> Result<Self> {
        let modes = lambdas
            .iter()
            .enumerate()
            .map(|(n, &lambda)| EigenMode::assemble(spec, n, lambda))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec: *spec,
            n_terms: modes.len(),
            modes,
        })
    }

    /// A copy restricted to the first `n` modes.
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.min(self.modes.len());
        Self {
            spec: self.spec,
            modes: self.modes[..n].to_vec(),
            n_terms: n,
        }
    }

    fn active(&self) -> &[EigenMode] {
        &self.modes[..self.n_terms.min(self.modes.len())]
    }

    /// Leading eigenvalue.
    pub fn lambda0(&self) -> f64 {
        self.modes[0].lambda
    }

    /// `g_n(y)` for every active mode.
    pub fn mode_values(&self, y: f64) -> Result<Vec<f64>> {
        if !(y > 0.0 && y <= 1.0) {
            return Err(Error::Domain {
                what: "y",
                value: y,
                domain: "(0, 1]",
            });
        }
        self.active()
            .iter()
            .map(|m| eigenfunction_g(m, &self.spec, y))
            .collect()
    }

    /// Green's function from precomputed [`mode_values`](Self::mode_values).
    pub fn greens_from_values(&self, values: &[f64], e_ratio: f64) -> f64 {
        if !(e_ratio >= 1.0) {
            return 0.0;
        }
        let ln_e = e_ratio.ln();
        let sum: f64 = self
            .active()
            .iter()
            .zip(values)
            .map(|(m, g)| m.a_hat * (-m.lambda * ln_e).exp() * g)
            .sum();
        GREENS_PREFACTOR * sum
    }

    /// Dimensionless Green's function
    /// `f_hat = (12/7) sum_n A_hat_n (e / e0)^(-lambda_n) g_n(y)`, zero below the
    /// injection energy.
    pub fn greens(&self, y: f64, e_ratio: f64) -> Result<f64> {
        if !(e_ratio >= 1.0) {
            return Ok(0.0);
        }
        Ok(self.greens_from_values(&self.mode_values(y)?, e_ratio))
    }

    /// Green's function over an energy grid. With `pi_free` the values are
    /// divided by `pi`, matching axes plotted in units of `N0 / (r0^2 e0^3 v_c)`.
    pub fn spectrum(&self, y: f64, e_ratios: &[f64], pi_free: bool) -> Result<Vec<f64>> {
        let values = self.mode_values(y)?;
        let scale = if pi_free { 1.0 / PI } else { 1.0 };
        Ok(e_ratios
            .iter()
            .map(|&e| scale * self.greens_from_values(&values, e))
            .collect())
    }

    fn mode(&self, n: usize) -> Result<&EigenMode> {
        self.modes
            .get(n)
            .ok_or_else(|| Error::InvalidArgument(format!("mode {n} not available ({} built)", self.modes.len())))
    }

    /// `integral_0^1 y^(-3/4) g_n g_m dy` by adaptive quadrature.
    pub fn overlap_integral(&self, n: usize, m: usize) -> Result<QuadratureResult> {
        let (gn, gm) = (*self.mode(n)?, *self.mode(m)?);
        let spec = self.spec;
        integrate_weighted_with_breaks(
            |y| {
                let a = eigenfunction_g(&gn, &spec, y).unwrap_or(f64::NAN);
                let b = eigenfunction_g(&gm, &spec, y).unwrap_or(f64::NAN);
                a * b
            },
            &[spec.y0],
            DEFAULT_REL_TOL,
        )
    }

    /// Residual of the completeness relation projected on mode `m`:
    /// `integral y^(-3/4) [sum_n A_hat_n g_n] g_m dy - y0^(-3/4) g_m(y0)`.
    pub fn delta_completeness_check(&self, m: usize) -> Result<f64> {
        let gm = *self.mode(m)?;
        if m >= self.n_terms {
            return Err(Error::InvalidArgument(format!("m = {m} must be below n_terms = {}", self.n_terms)));
        }
        let spec = self.spec;
        let modes = self.active();
        let q = integrate_weighted_with_breaks(
            |y| {
                let sum: f64 = modes
                    .iter()
                    .map(|mode| mode.a_hat * eigenfunction_g(mode, &spec, y).unwrap_or(f64::NAN))
                    .sum();
                sum * eigenfunction_g(&gm, &spec, y).unwrap_or(f64::NAN)
            },
            &[spec.y0],
            DEFAULT_REL_TOL,
        )?;
        let source = spec.y0.powf(-0.75) * eigenfunction_g(&gm, &spec, spec.y0)?;
        Ok(q.value - source)
    }
}

/// Free-function form of [`GreensEvaluator::greens`].
pub fn greens_function(ev: &GreensEvaluator, y: f64, e_ratio: f64) -> Result<f64> {
    ev.greens(y, e_ratio)
}

/// Free-function form of [`GreensEvaluator::delta_completeness_check`].
pub fn delta_completeness_check(ev: &GreensEvaluator, m: usize) -> Result<f64> {
    ev.delta_completeness_check(m)
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(Error::InvalidArgument(format!(
            "log grid needs 0 < lo < hi and at least 2 points (lo = {lo}, hi = {hi}, n = {n})"
        )));
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / (n - 1) as f64;
    Ok((0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => (a + k as f64 * step).exp(),
        })
        .collect())
}
