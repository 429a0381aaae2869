use std::path::Path;

use super::evaluator::GreensEvaluator;
use crate::error::{Error, Result};

/// Tabulated source spectrum `j(e0)` on a strictly increasing positive grid.
///
/// The text format is two whitespace- or comma-separated columns,
/// `epsilon0 j`, one row per line. Lines starting with `#` and blank lines
/// are ignored. Energies are dimensionless (in units of a reference energy).
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpectrum {
    energies: Vec<f64>,
    values: Vec<f64>,
}

impl SourceSpectrum {
    pub fn new(energies: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if energies.len() != values.len() {
            return Err(Error::InvalidSpectrum(format!(
                "{} energies but {} values",
                energies.len(),
                values.len()
            )));
        }
        if energies.len() < 2 {
            return Err(Error::InvalidSpectrum("at least two grid points are required".into()));
        }
        for (i, (&e, &j)) in energies.iter().zip(&values).enumerate() {
            if !(e > 0.0 && e.is_finite()) {
                return Err(Error::InvalidSpectrum(format!("row {}: energy {e} is not positive", i + 1)));
            }
            if !(j >= 0.0 && j.is_finite()) {
                return Err(Error::InvalidSpectrum(format!("row {}: value {j} is negative or not finite", i + 1)));
            }
            if i > 0 && e <= energies[i - 1] {
                return Err(Error::InvalidSpectrum(format!("row {}: energies must strictly increase", i + 1)));
            }
        }
        Ok(Self { energies, values })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut energies = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect();
            if cols.len() != 2 {
                return Err(Error::InvalidSpectrum(format!(
                    "line {}: expected two columns, found {}",
                    lineno + 1,
                    cols.len()
                )));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::InvalidSpectrum(format!("line {}: `{s}` is not a number", lineno + 1)))
            };
            energies.push(num(cols[0])?);
            values.push(num(cols[1])?);
        }
        Self::new(energies, values)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpectrum(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Photon-number Planck shape `e^2 / (exp(e / kT) - 1)` on `grid`.
    pub fn planck(kt: f64, grid: &[f64]) -> Result<Self> {
        if !(kt > 0.0) {
            return Err(Error::InvalidSpectrum(format!("temperature {kt} must be positive")));
        }
        let values = grid.iter().map(|&e| e * e / (e / kt).exp_m1()).collect();
        Self::new(grid.to_vec(), values)
    }

    /// Uniform `j` on `[lo, hi]` sampled on `points` linearly spaced energies.
    pub fn uniform(lo: f64, hi: f64, points: usize, level: f64) -> Result<Self> {
        if points < 2 || !(hi > lo) {
            return Err(Error::InvalidSpectrum("uniform source needs lo < hi and two points".into()));
        }
        let step = (hi - lo) / (points - 1) as f64;
        let energies = (0..points).map(|k| lo + k as f64 * step).collect();
        Self::new(energies, vec![level; points])
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Serialises to the two-column text format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# epsilon0 j\n");
        for (e, j) in self.energies.iter().zip(&self.values) {
            out.push_str(&format!("{e:.11e} {j:.11e}\n"));
        }
        out
    }
}

/// Spectrum at position `y` and energy `epsilon` produced by the tabulated
/// source: `integral j(e0) e0^(-3) f_hat(epsilon / e0) de0`, trapezoidal over
/// the grid points with `e0 <= epsilon`.
///
/// The result is in units of `1 / (pi r0^2 v_c)` times the units of `j`.
///
/// At `y = y0` the Green's function grows without bound as `epsilon / e0 -> 1`,
/// so the grid interval next to `e0 = epsilon` dominates and the trapezoid
/// converges slowly under refinement there.
pub fn convolve_spectrum(ev: &GreensEvaluator, source: &SourceSpectrum, y: f64, epsilon: f64) -> Result<f64> {
    Ok(convolve_spectrum_many(ev, source, y, &[epsilon])?[0])
}

/// [`convolve_spectrum`] for many output energies at one position.
pub fn convolve_spectrum_many(
    ev: &GreensEvaluator,
    source: &SourceSpectrum,
    y: f64,
    epsilons: &[f64],
) -> Result<Vec<f64>> {
    let values = ev.mode_values(y)?;
    let e0 = &source.energies;
    let j = &source.values;
    Ok(epsilons
        .iter()
        .map(|&eps| {
            let integrand = |i: usize| j[i] * e0[i].powi(-3) * ev.greens_from_values(&values, eps / e0[i]);
            let upper = e0.partition_point(|&e| e <= eps);
            let mut acc = 0.0;
            for i in 1..upper {
                acc += 0.5 * (e0[i] - e0[i - 1]) * (integrand(i) + integrand(i - 1));
            }
            acc
        })
        .collect())
}
