use super::problem::{eigen_residual_scaled, ProblemSpec};
use crate::eigenbasis::{lambda_of_a, spectral_params};
use crate::error::{Error, Result};

/// Largest number of eigenvalues a single search may request.
pub const MAX_EIGENVALUES: usize = 1000;

const SCAN_START: f64 = 3.9;
const SCAN_STEP_A: f64 = 1.0 / 16.0;
const MAX_BISECTIONS: usize = 200;

/// Eigenvalues of the unabsorbed problem, `4 n^2 + 9 n + 4`.
pub fn unabsorbed_eigenvalue(n: usize) -> f64 {
    let n = n as f64;
    4.0 * n * n + 9.0 * n + 4.0
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 || count > MAX_EIGENVALUES {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue count must be in 1..={MAX_EIGENVALUES}, got {count}"
        )));
    }
    Ok(())
}

/// The first `count` eigenvalues in increasing order.
///
/// Uses the closed form when `beta = 0` and [`scan_eigenvalues`] otherwise.
pub fn find_eigenvalues(spec: &ProblemSpec, count: usize) -> Result<Vec<f64>> {
    check_count(count)?;
    if spec.is_unabsorbed() {
        return Ok((0..count).map(unabsorbed_eigenvalue).collect());
    }
    scan_eigenvalues(spec, count)
}

/// General root search, valid for every `beta >= 0`.
///
/// The residual is sampled on a uniform grid in the parameter `a` (step 1/16)
/// starting just below `lambda = 4`, so each unit interval of `a` between the
/// unabsorbed eigenvalues receives sixteen samples. Sign changes are refined
/// by bisection in `a` down to floating-point resolution, which is well inside
/// `|dlambda| <= 1e-10 (1 + lambda)`. High roots crowd against the window
/// edges `a = -n` (the offset falls to about 1e-6 near n = 500), and the
/// normalization depends on that offset through `Psi(a)`, so a coarser stop
/// would cost accuracy there. Every root is then checked against the window
/// it should occupy.
pub fn scan_eigenvalues(spec: &ProblemSpec, count: usize) -> Result<Vec<f64>> {
    check_count(count)?;
    let residual = |a: f64| eigen_residual_scaled(lambda_of_a(a), spec);
    let a_start = spectral_params(SCAN_START)?.a;
    let max_steps = (count + 4) * 16 + 64;

    let mut roots = Vec::with_capacity(count);
    let mut prev_a = a_start;
    let mut prev_r = residual(prev_a)?;
    if prev_r == 0.0 {
        roots.push(SCAN_START);
    }
    for k in 1..=max_steps {
        if roots.len() >= count {
            break;
        }
        let a = a_start - k as f64 * SCAN_STEP_A;
        let r = residual(a)?;
        if r == 0.0 {
            roots.push(lambda_of_a(a));
        } else if prev_r != 0.0 && (r > 0.0) != (prev_r > 0.0) {
            roots.push(lambda_of_a(bisect(&residual, prev_a, prev_r, a)?));
        }
        prev_a = a;
        prev_r = r;
    }
    if roots.len() < count {
        return Err(Error::TooFewRoots {
            found: roots.len(),
            wanted: count,
        });
    }
    roots.truncate(count);
    verify_windows(spec, &roots)?;
    Ok(roots)
}

/// Bisects `f` on the bracket between `lo` and `hi` (in either order) until
/// the midpoint no longer moves.
fn bisect<F>(f: &F, mut lo: f64, mut r_lo: f64, mut hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            return Ok(mid);
        }
        let r = f(mid)?;
        if r == 0.0 {
            return Ok(mid);
        }
        if (r > 0.0) == (r_lo > 0.0) {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence { terms: MAX_BISECTIONS })
}

/// Root `n` must lie between the unabsorbed eigenvalues `n` and `n + 1`
/// (`beta > 0`), or coincide with unabsorbed eigenvalue `n` (`beta = 0`).
fn verify_windows(spec: &ProblemSpec, roots: &[f64]) -> Result<()> {
    for (index, &lambda) in roots.iter().enumerate() {
        let nu = -spectral_params(lambda)?.a;
        let window = if spec.is_unabsorbed() { nu.round() } else { nu.floor() };
        if window < 0.0 || window as usize != index {
            return Err(Error::MissedRoot {
                window: window.max(0.0) as usize,
                index,
                lambda,
            });
        }
    }
    Ok(())
}
