//! Dimensional description of the accretion column (cgs units).
//!
//! This is the only module that deals with physical units. Everything
//! downstream works with the dimensionless position `y` in `(0, 1]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Speed of light, cm/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;
/// Gravitational constant, cm^3 g^-1 s^-2.
pub const GRAVITATIONAL_CONSTANT: f64 = 6.6743e-8;

const Y_AT_ORIGIN: f64 = 3.0 / 7.0;

/// Column radius, scattering cross sections, electron flux and stellar
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnGeometry {
    pub r0: f64,
    pub sigma_par: f64,
    pub sigma_perp: f64,
    pub j: f64,
    pub m_star: f64,
    pub r_star: f64,
}

impl ColumnGeometry {
    pub fn new(r0: f64, sigma_par: f64, sigma_perp: f64, j: f64, m_star: f64, r_star: f64) -> Result<Self> {
        let g = Self {
            r0,
            sigma_par,
            sigma_perp,
            j,
            m_star,
            r_star,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let fields = [
            ("r0", self.r0),
            ("sigma_par", self.sigma_par),
            ("sigma_perp", self.sigma_perp),
            ("J", self.j),
            ("M_star", self.m_star),
            ("R_star", self.r_star),
        ];
        for (what, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Domain {
                    what,
                    value,
                    domain: "(0, inf)",
                });
            }
        }
        Ok(())
    }

    /// Builds a geometry from `key=value` pairs.
    ///
    /// Recognised keys: `r0`, `sigma_par`, `sigma_perp`, `J` (or `j`),
    /// `M_star` (or `m_star`), `R_star` (or `r_star`). All six are required.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut slots: [Option<f64>; 6] = [None; 6];
        for pair in pairs {
            let pair = pair.as_ref();
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{pair}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("`{value}` is not a number (key `{key}`)")))?;
            let idx = match key.trim() {
                "r0" => 0,
                "sigma_par" => 1,
                "sigma_perp" => 2,
                "J" | "j" => 3,
                "M_star" | "m_star" => 4,
                "R_star" | "r_star" => 5,
                other => return Err(Error::InvalidArgument(format!("unknown geometry key `{other}`"))),
            };
            slots[idx] = Some(value);
        }
        const NAMES: [&str; 6] = ["r0", "sigma_par", "sigma_perp", "J", "M_star", "R_star"];
        let mut vals = [0.0; 6];
        for (i, slot) in slots.iter().enumerate() {
            vals[i] = slot.ok_or_else(|| Error::InvalidArgument(format!("missing geometry key `{}`", NAMES[i])))?;
        }
        Self::new(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5])
    }

    /// Electron flux that satisfies the dynamical constraint exactly.
    pub fn constrained_flux(r0: f64, sigma_par: f64, sigma_perp: f64) -> f64 {
        0.75f64.sqrt() * SPEED_OF_LIGHT / (r0 * (sigma_perp * sigma_par).sqrt())
    }
}

impl FromStr for ColumnGeometry {
    type Err = Error;

    /// Parses whitespace- or comma-separated `key=value` pairs.
    fn from_str(s: &str) -> Result<Self> {
        Self::from_pairs(s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()))
    }
}

impl fmt::Display for ColumnGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r0={} sigma_par={} sigma_perp={} J={} M_star={} R_star={}",
            self.r0, self.sigma_par, self.sigma_perp, self.j, self.m_star, self.r_star
        )
    }
}

/// A point in the column: position `y` and velocity in units of `v_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowState {
    pub y: f64,
    pub v_over_vc: f64,
}

impl FlowState {
    pub fn at(y: f64) -> Result<Self> {
        if !(y > 0.0 && y <= 1.0) {
            return Err(Error::Domain {
                what: "y",
                value: y,
                domain: "(0, 1]",
            });
        }
        Ok(Self { y, v_over_vc: velocity(y) })
    }
}

/// Sonic-point speed `v_c` (cm/s) and the distance `x_st` (cm) from the
/// sonic point to the stellar surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SonicConstants {
    pub v_c: f64,
    pub x_st: f64,
}

pub fn sonic_constants(geom: &ColumnGeometry) -> SonicConstants {
    let v_c = 4.0 / 7.0 * (2.0 * GRAVITATIONAL_CONSTANT * geom.m_star / geom.r_star).sqrt();
    let x_st = geom.r0 / (2.0 * 3f64.sqrt()) * (geom.sigma_perp / geom.sigma_par).sqrt() * (7.0f64 / 3.0).ln();
    SonicConstants { v_c, x_st }
}

/// Dimensionless position for height `x` above the sonic point.
pub fn y_of_x(geom: &ColumnGeometry, x: f64) -> Result<f64> {
    let x_st = sonic_constants(geom).x_st;
    if x > x_st || x.is_nan() {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "(-inf, x_st]",
        });
    }
    Ok((7.0f64 / 3.0).powf(-1.0 + x / x_st))
}

/// Height for dimensionless position `y`; inverse of [`y_of_x`].
pub fn x_of_y(geom: &ColumnGeometry, y: f64) -> Result<f64> {
    if !(y > 0.0 && y <= 1.0) {
        return Err(Error::Domain {
            what: "y",
            value: y,
            domain: "(0, 1]",
        });
    }
    let x_st = sonic_constants(geom).x_st;
    Ok(x_st * (1.0 + y.ln() / (7.0f64 / 3.0).ln()))
}

/// Flow speed in units of `v_c`: `(7/4)(1 - y)`.
pub fn velocity(y: f64) -> f64 {
    1.75 * (1.0 - y)
}

/// Relative residual of `r0^2 J^2 sigma_perp sigma_par = (3/4) c^2`.
pub fn check_dynamical_constraint(geom: &ColumnGeometry) -> f64 {
    let target = 0.75 * SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let lhs = geom.r0 * geom.r0 * geom.j * geom.j * geom.sigma_perp * geom.sigma_par;
    (lhs - target).abs() / target
}

/// Mean escape time through the column walls at position `y`,
/// `r0^2 n_e sigma_perp / c` with `n_e = J / v`.
pub fn escape_time(geom: &ColumnGeometry, y: f64) -> Result<f64> {
    let state = FlowState::at(y)?;
    if state.v_over_vc <= 0.0 {
        return Err(Error::Domain {
            what: "y",
            value: y,
            domain: "(0, 1); the flow is at rest at y = 1",
        });
    }
    let v = state.v_over_vc * sonic_constants(geom).v_c;
    let n_e = geom.j / v;
    Ok(geom.r0 * geom.r0 * n_e * geom.sigma_perp / SPEED_OF_LIGHT)
}

/// The origin `x = 0` sits at `y = 3/7`.
pub fn y_at_origin() -> f64 {
    Y_AT_ORIGIN
}
