//! Adaptive Gauss-Kronrod integration of `y^(-3/4) f(y)` over `(0, 1)`.
//!
//! The substitution `u = y^(1/4)` turns the weighted integral into
//! `4 * integral_0^1 f(u^4) du`, which has no endpoint singularity. Panels are
//! bisected where the local error estimate is largest.

use crate::error::{Error, Result};

/// Default relative tolerance for oracle use.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

const MAX_PANELS: usize = 4000;
const Y_CEILING: f64 = 1.0 - 1e-14;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of a successful integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

fn kronrod15<F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Panel {
        lo,
        hi,
        value,
        error,
        abs_value: resabs,
    })
}

/// Approximates `integral_0^1 y^(-3/4) f(y) dy`.
///
/// The tolerance is relative to `integral y^(-3/4) |f(y)| dy`, so integrals
/// whose value cancels to nearly zero (orthogonality checks) remain attainable.
pub fn integrate_weighted<F>(f: F, rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_weighted_with_breaks(f, &[], rel_tol)
}

/// As [`integrate_weighted`], with extra panel boundaries at the given `y`
/// values (for example a kink of the integrand).
pub fn integrate_weighted_with_breaks<F>(mut f: F, breaks: &[f64], rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if !(1e-12..=1e-3).contains(&rel_tol) {
        return Err(Error::Domain {
            what: "rel_tol",
            value: rel_tol,
            domain: "[1e-12, 1e-3]",
        });
    }
    let mut evaluations = 0usize;
    let mut integrand = |u: f64| -> Result<f64> {
        evaluations += 1;
        let y = (u * u * u * u).min(Y_CEILING);
        let v = 4.0 * f(y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand(y))
        }
    };

    let mut edges: Vec<f64> = breaks
        .iter()
        .filter(|b| **b > 0.0 && **b < 1.0)
        .map(|b| b.powf(0.25))
        .collect();
    edges.push(0.0);
    edges.push(1.0);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut panels = Vec::with_capacity(64);
    for w in edges.windows(2) {
        panels.push(kronrod15(&mut integrand, w[0], w[1])?);
    }

    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        let total_abs: f64 = panels.iter().map(|p| p.abs_value).sum();
        if total_err <= rel_tol * total_abs {
            break;
        }
        if panels.len() >= MAX_PANELS {
            let (value, abs_error) = sum_in_order(&mut panels);
            return Err(Error::ToleranceNotMet {
                estimate: value,
                abs_error,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        if mid <= p.lo || mid >= p.hi {
            let (value, abs_error) = sum_in_order(&mut panels);
            return Err(Error::ToleranceNotMet {
                estimate: value + p.value,
                abs_error: abs_error + p.error,
            });
        }
        panels.push(kronrod15(&mut integrand, p.lo, mid)?);
        panels.push(kronrod15(&mut integrand, mid, p.hi)?);
    }

    let (value, abs_error_estimate) = sum_in_order(&mut panels);
    Ok(QuadratureResult {
        value,
        abs_error_estimate,
        evaluations,
    })
}

fn sum_in_order(panels: &mut [Panel]) -> (f64, f64) {
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}
