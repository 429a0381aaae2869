//! Gamma-family functions on the real line.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `sin(pi x)` with exact argument reduction, so integers give exactly zero.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// `cos(pi x)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let c = (PI * r).cos();
    if n.rem_euclid(2.0) == 0.0 {
        c
    } else {
        -c
    }
}

/// Lanczos evaluation of `ln Gamma(x)` for `x >= 0.5`.
fn ln_gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_P[0];
    for (k, p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Returns `(ln|Gamma(x)|, sign(Gamma(x)))`.
///
/// Fails with [`Error::Pole`] at nonpositive integers.
pub fn ln_gamma(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "finite reals",
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        Ok((ln_gamma_lanczos(x), 1.0))
    } else {
        let s = sin_pi(x);
        let (lg, _) = ln_gamma(1.0 - x)?;
        Ok((PI.ln() - s.abs().ln() - lg, s.signum()))
    }
}

/// `Gamma(x)`. Overflow produces an infinite value of the correct sign.
pub fn gamma(x: f64) -> Result<f64> {
    let (lg, s) = ln_gamma(x)?;
    Ok(s * lg.exp())
}

/// `1 / Gamma(x)`, an entire function: exactly zero at the poles of `Gamma`.
pub fn rgamma(x: f64) -> f64 {
    if x >= 0.5 {
        (-ln_gamma_lanczos(x)).exp()
    } else {
        let s = sin_pi(x);
        if s == 0.0 {
            return 0.0;
        }
        s / PI * ln_gamma_lanczos(1.0 - x).exp()
    }
}

/// `1 / (Gamma(a) Gamma(b))` computed without forming either factor, so
/// the result stays finite when `Gamma(a)` overflows but the product does not.
pub fn rgamma_product(a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if hi < 0.5 {
        return rgamma(lo) * rgamma(hi);
    }
    if lo >= 0.5 {
        return (-ln_gamma_lanczos(lo) - ln_gamma_lanczos(hi)).exp();
    }
    let s = sin_pi(lo);
    if s == 0.0 {
        return 0.0;
    }
    s / PI * (ln_gamma_lanczos(1.0 - lo) - ln_gamma_lanczos(hi)).exp()
}

/// `Gamma(x) / Gamma(y)` evaluated in log space.
pub fn gamma_ratio(x: f64, y: f64) -> Result<f64> {
    let (lx, sx) = ln_gamma(x)?;
    if is_nonpositive_integer(y) {
        return Ok(0.0);
    }
    let (ly, sy) = ln_gamma(y)?;
    Ok(sx * sy * (lx - ly).exp())
}

/// Digamma function `Psi(x) = Gamma'(x) / Gamma(x)`.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "finite reals",
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x <= 0.0 {
        let refl = PI * cos_pi(x) / sin_pi(x);
        return Ok(digamma_positive(1.0 - x) - refl);
    }
    Ok(digamma_positive(x))
}

fn digamma_positive(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Asymptotic Bernoulli series, Horner form in 1/x^2.
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32_760.0 - inv2 / 12.0))))));
    shift + x.ln() - 0.5 / x - tail
}

/// `Psi(x) / Gamma(x)`, finite at the poles of both factors.
///
/// For `x < 1/2` this uses `Psi(x) / Gamma(x) = [sin(pi x) Psi(1 - x) - pi cos(pi x)] Gamma(1 - x) / pi`.
pub fn digamma_rgamma(x: f64) -> f64 {
    if x >= 0.5 {
        digamma_positive(x) * rgamma(x)
    } else {
        let lg = ln_gamma_lanczos(1.0 - x);
        (sin_pi(x) * digamma_positive(1.0 - x) - PI * cos_pi(x)) * lg.exp() / PI
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + f64::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln_gamma_trivial_points() {
        assert_eq!(ln_gamma(1.0).unwrap().1, 1.0);
        assert!(ln_gamma(1.0).unwrap().0.abs() < 1e-15);
        assert_relative_eq!(ln_gamma(0.5).unwrap().0, PI.sqrt().ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(0.5).unwrap().0, 0.572_364_942_9, max_relative = 1e-9);
    }

    #[test]
    fn ln_gamma_poles_and_signs() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert!(matches!(ln_gamma(x), Err(Error::Pole(_))));
        }
        assert_eq!(ln_gamma(-0.25).unwrap().1, -1.0);
        assert_eq!(ln_gamma(-1.25).unwrap().1, 1.0);
        assert_relative_eq!(gamma(-0.25).unwrap(), -4.901_666_809_860_711, max_relative = 1e-13);
    }

    #[test]
    fn gamma_product_identity() {
        let lhs = gamma(0.75).unwrap() * gamma(2.25).unwrap();
        assert_relative_eq!(lhs, 5.0 / 16.0 * PI * 2f64.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(lhs, 1.388_400_918_174_489_452_2, max_relative = 1e-13);
    }

    #[test]
    fn reflection_formula() {
        let mut x: f64 = -2.95;
        while x < 3.0 {
            if (x - x.round()).abs() > 1e-3 {
                let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
                let rhs = PI / (PI * x).sin();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
            x += 0.037;
        }
    }

    #[test]
    fn rgamma_zeroes_and_products() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert_relative_eq!(rgamma(5.0), 1.0 / 24.0, max_relative = 1e-14);
        let a = -40.3;
        let b = 9.0 / 4.0 - a;
        let direct = rgamma(a) * rgamma(b);
        assert_relative_eq!(rgamma_product(a, b), direct, max_relative = 1e-11);
        assert!(rgamma_product(-400.3, 402.55).is_finite());
        assert!(rgamma_product(-400.3, 402.55) != 0.0);
    }

    #[test]
    fn digamma_values() {
        assert_relative_eq!(digamma(1.0).unwrap(), -EULER_GAMMA, max_relative = 1e-14);
        assert_relative_eq!(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA, max_relative = 1e-14);
        assert_relative_eq!(digamma(2.25).unwrap(), 0.572_546_466_623_734_591_91, max_relative = 1e-14);
        assert!(matches!(digamma(-2.0), Err(Error::Pole(_))));
    }

    #[test]
    fn digamma_recurrence() {
        let mut x = 0.1;
        while x <= 10.0 {
            let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
            assert!((d - 1.0 / x).abs() <= 1e-12 * (1.0 / x).max(1.0), "x = {x}");
            x += 0.013;
        }
    }

    #[test]
    fn digamma_rgamma_is_regular_at_poles() {
        // Psi(x)/Gamma(x) -> (-1)^(m+1) m! at x = -m.
        assert_relative_eq!(digamma_rgamma(0.0), -1.0, max_relative = 1e-14);
        assert_relative_eq!(digamma_rgamma(-1.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(digamma_rgamma(-3.0), 6.0, max_relative = 1e-13);
        let x = -2.3;
        let direct = digamma(x).unwrap() * rgamma(x);
        assert_relative_eq!(digamma_rgamma(x), direct, max_relative = 1e-12);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(2.25, 0), 1.0);
        assert_eq!(pochhammer(2.25, 1), 2.25);
        assert_eq!(pochhammer(-1.0, 2), 0.0);
        assert_relative_eq!(pochhammer(0.5, 3), 0.5 * 1.5 * 2.5);
    }

    #[test]
    fn trig_reduction_is_exact_at_integers() {
        assert_eq!(sin_pi(7.0), 0.0);
        assert_eq!(sin_pi(-12.0), 0.0);
        assert_eq!(cos_pi(3.0), -1.0);
        assert_relative_eq!(sin_pi(0.5), 1.0);
        assert_relative_eq!(sin_pi(-1.5), 1.0);
    }
}
