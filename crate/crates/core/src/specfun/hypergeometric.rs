//! Gauss hypergeometric function `2F1(a, b; c; y)` on `[0, 1)`.
//!
//! Two branches cover the unit interval. The power series in `y` is used on
//! `[0, Y_SWITCH]`, and the expansion in powers of `1 - y` with logarithmic
//! terms covers `[Y_SWITCH, 1)` when `c = a + b`.

use std::f64::consts::PI;

use super::gamma::{
    cos_pi, digamma, digamma_rgamma, gamma, ln_gamma, rgamma, sin_pi, EULER_GAMMA,
};
use crate::error::{Error, Result};

/// Crossover point between the two series branches.
pub const Y_SWITCH: f64 = 0.5;

/// Maximum number of series terms before reporting non-convergence.
pub const MAX_TERMS: usize = 200;

const TERM_RTOL: f64 = 1e-16;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Tracks the stopping rule: two consecutive negligible terms.
struct Stopper {
    quiet: u8,
}

impl Stopper {
    fn new() -> Self {
        Self { quiet: 0 }
    }

    fn done(&mut self, term: f64, sum: f64) -> bool {
        if term.abs() <= TERM_RTOL * sum.abs() {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= 2
    }
}

/// Regular power series for `2F1(a, b; c; y)`, `0 <= y <= 0.5`.
pub fn hyp2f1(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    if !(0.0..=Y_SWITCH).contains(&y) {
        return Err(Error::Domain {
            what: "y",
            value: y,
            domain: "[0, 0.5] for the regular 2F1 series",
        });
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(c));
    }
    series(a, b, c, y)
}

/// Power series without the domain restriction; callers guarantee `|y| < 1`.
pub(crate) fn series(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut stop = Stopper::new();
    for n in 0..MAX_TERMS {
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * y;
        sum += term;
        if stop.done(term, sum) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { terms: MAX_TERMS })
}

/// Running values of `(x)_n / Gamma(x)` and `(x)_n Psi(x + n) / Gamma(x)`.
///
/// Both are entire in `x`, so nonpositive integer parameters are handled
/// without special cases.
struct RatioSequence {
    x: f64,
    n: usize,
    rising: f64,
    scaled: f64,
    gamma_reflected: f64,
}

impl RatioSequence {
    fn new(x: f64) -> Self {
        let gamma_reflected = if x < 0.5 {
            ln_gamma(1.0 - x).map(|(l, _)| l.exp()).unwrap_or(f64::INFINITY)
        } else {
            0.0
        };
        Self {
            x,
            n: 0,
            rising: 1.0,
            scaled: rgamma(x),
            gamma_reflected,
        }
    }

    /// `(x)_n / Gamma(x)`
    fn p(&self) -> f64 {
        self.scaled
    }

    /// `(x)_n Psi(x + n) / Gamma(x)`
    fn q(&self) -> Result<f64> {
        let z = self.x + self.n as f64;
        if z > 0.5 {
            return Ok(self.scaled * digamma(z)?);
        }
        if self.n == 0 {
            return Ok(digamma_rgamma(self.x));
        }
        let bracket = sin_pi(self.x) * digamma(1.0 - z)? - PI * cos_pi(self.x);
        Ok(self.rising * bracket * self.gamma_reflected / PI)
    }

    fn advance(&mut self) {
        let z = self.x + self.n as f64;
        self.rising *= z;
        self.scaled *= z;
        self.n += 1;
    }
}

/// `2F1(a, b; a + b; y)` for `0.5 <= y < 1` via the logarithmic expansion
/// in powers of `1 - y`.
///
/// Nonpositive integer `a` or `b` are accepted; the series then reduces to
/// the terminating polynomial.
pub fn hyp2f1_logcase(a: f64, b: f64, y: f64) -> Result<f64> {
    if !(Y_SWITCH..1.0).contains(&y) {
        return Err(Error::Domain {
            what: "y",
            value: y,
            domain: "[0.5, 1) for the logarithmic 2F1 expansion",
        });
    }
    logcase_unchecked(a, b, y)
}

pub(crate) fn logcase_unchecked(a: f64, b: f64, y: f64) -> Result<f64> {
    let c = a + b;
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(c));
    }
    let gc = gamma(c)?;
    let w = 1.0 - y;
    let ln_w = w.ln();
    let mut sa = RatioSequence::new(a);
    let mut sb = RatioSequence::new(b);
    let mut weight = 1.0;
    let mut psi_n1 = -EULER_GAMMA;
    let mut sum = 0.0;
    let mut stop = Stopper::new();
    for n in 0..MAX_TERMS {
        if n > 0 {
            let k = n as f64;
            weight *= w / (k * k);
            psi_n1 += 1.0 / k;
            sa.advance();
            sb.advance();
        }
        let (pa, pb) = (sa.p(), sb.p());
        let bracket = pa * pb * (2.0 * psi_n1 - ln_w) - sa.q()? * pb - pa * sb.q()?;
        let term = bracket * weight;
        sum += term;
        if n > 0 && stop.done(term, sum) {
            return Ok(gc * sum);
        }
    }
    Err(Error::NonConvergence { terms: MAX_TERMS })
}

/// `2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))`, valid for `c - a - b > 0`.
pub fn gauss_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    let s = c - a - b;
    if s <= 0.0 {
        return Err(Error::Domain {
            what: "c - a - b",
            value: s,
            domain: "(0, inf); the series diverges at y = 1 otherwise",
        });
    }
    Ok(gamma(c)? * gamma(s)? * rgamma(c - a) * rgamma(c - b))
}
