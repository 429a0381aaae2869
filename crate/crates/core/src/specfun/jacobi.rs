//! Jacobi polynomials `P_n^(5/4, 0)(1 - 2y)` and the degree ladder shared
//! with the Jacobi functions of non-integer degree.

/// Upper parameter of the Jacobi family used throughout the crate.
pub const ALPHA: f64 = 1.25;

/// Degrees at or below this use the terminating series.
pub const SERIES_MAX_DEGREE: u32 = 6;

/// Coefficients `(A_n, B_n, C_n)` of `A_n P_n = B_n P_{n-1} - C_n P_{n-2}`,
/// with the `x`-dependence folded into `B_n`.
#[inline]
fn coefficients(n: f64, alpha: f64, beta: f64, x: f64) -> (f64, f64, f64) {
    let s = 2.0 * n + alpha + beta;
    let a = 2.0 * n * (n + alpha + beta) * (s - 2.0);
    let b = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
    let c = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * s;
    (a, b, c)
}

/// `P_n^(5/4,0)(1 - 2y)`.
///
/// Terminating series for small degree, three-term recurrence otherwise.
pub fn jacobi_p(n: u32, y: f64) -> f64 {
    if n <= SERIES_MAX_DEGREE {
        jacobi_series(n, y)
    } else {
        *jacobi_p_all(n, y).last().expect("non-empty")
    }
}

fn jacobi_series(n: u32, y: f64) -> f64 {
    let nf = f64::from(n);
    let c = ALPHA + 1.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = f64::from(k);
        term *= (kf - nf) * (nf + c + kf) / ((c + kf) * (kf + 1.0)) * y;
        sum += term;
    }
    // (9/4)_n / n!
    let norm = (0..n).fold(1.0, |acc, k| acc * (c + f64::from(k)) / (f64::from(k) + 1.0));
    norm * sum
}

/// `[P_0, P_1, ..., P_n]` of `P_k^(5/4,0)(1 - 2y)` by forward recurrence.
pub fn jacobi_p_all(n: u32, y: f64) -> Vec<f64> {
    let x = 1.0 - 2.0 * y;
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push((ALPHA + 1.0) + (ALPHA + 2.0) * (x - 1.0) / 2.0);
    for k in 2..=n {
        let (a, b, c) = coefficients(f64::from(k), ALPHA, 0.0, x);
        let k = k as usize;
        let next = (b * out[k - 1] - c * out[k - 2]) / a;
        out.push(next);
    }
    out
}

/// Climbs the degree ladder for hypergeometric-normalized Jacobi functions
/// `F_n = 2F1(-n, n + alpha + beta + 1; alpha + 1; (1 - x)/2)`.
///
/// Starting from `F_{n0}` and `F_{n0+1}`, returns `F_{n0+steps}`. The degree
/// `n0` need not be an integer.
pub(crate) fn hyp_ladder(alpha: f64, beta: f64, x: f64, n0: f64, f0: f64, f1: f64, steps: u32) -> f64 {
    if steps == 0 {
        return f0;
    }
    let (mut prev, mut cur) = (f0, f1);
    for k in 2..=steps {
        let n = n0 + f64::from(k);
        let (a, b, c) = coefficients(n, alpha, beta, x);
        let r1 = n / (n + alpha);
        let r2 = r1 * (n - 1.0) / (n + alpha - 1.0);
        let next = (b * r1 * cur - c * r2 * prev) / a;
        prev = cur;
        cur = next;
    }
    cur
}
