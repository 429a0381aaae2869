//! Command-line front end for the accretion-column Green's function.
//!
//! Exit status is 0 on success, 1 when `verify` finds a failing identity and
//! 2 on input or computational errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "pulsar-green", version, about = "Green's function for photon spectra in X-ray pulsar accretion columns")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Absorption strength beta >= 0.
    #[arg(long, global = true, default_value_t = 0.4)]
    pub beta: f64,
    /// Dimensionless source position y0.
    #[arg(long, global = true, default_value_t = 0.9)]
    pub y0: f64,
    /// Number of eigenmodes in the Green's function series.
    #[arg(long, global = true, env = "PULSAR_GREEN_TERMS", default_value_t = 20)]
    pub terms: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Log-spaced energy grid.
#[derive(Debug, Clone, Args)]
pub struct Grid {
    /// Lower end of the energy grid (e / e0 for spectra).
    #[arg(long, default_value_t = 1.0)]
    pub emin: f64,
    /// Upper end of the energy grid.
    #[arg(long, default_value_t = 1e4)]
    pub emax: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue table (n, lambda_n, B_n, C_n, A_hat_n).
    Eigen {
        /// Number of eigenvalues; defaults to --terms.
        #[arg(long)]
        count: Option<usize>,
        /// Tabulate lambda0 against y0 for each beta in --betas instead.
        #[arg(long)]
        sweep_y0: bool,
        /// Absorption strengths for --sweep-y0.
        #[arg(long, value_delimiter = ',', default_value = "0,0.4,1,2,4")]
        betas: Vec<f64>,
        /// Number of y0 values in the sweep, evenly spaced in (0, 1).
        #[arg(long, default_value_t = 19)]
        sweep_points: usize,
    },
    /// Green's function spectra f_hat(e / e0) at one or more positions.
    Spectrum {
        #[command(flatten)]
        grid: Grid,
        /// Positions y, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5,0.7,0.9")]
        y: Vec<f64>,
        /// Divide by pi (units without the factor pi).
        #[arg(long)]
        pi_free: bool,
    },
    /// Energy moments in closed form and as eigenmode series.
    Moments {
        /// Moment order.
        #[arg(long, default_value_t = 2.0)]
        ell: f64,
        /// Positions y, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.5,0.8")]
        y: Vec<f64>,
        /// Eigenmodes in the series column.
        #[arg(long, default_value_t = 500)]
        series_terms: usize,
    },
    /// Numerical checks of the expansion identities.
    Verify {
        /// Restrict to the named suites (repeatable); all by default.
        #[arg(long, value_enum)]
        suite: Vec<commands::Suite>,
        /// Add this offset to lambda0 before building modes.
        #[arg(long, default_value_t = 0.0)]
        perturb_lambda0: f64,
    },
    /// Spectrum produced by a tabulated source, convolved with the Green's function.
    Convolve {
        /// Two-column source file `epsilon0 j`.
        #[arg(long)]
        source: PathBuf,
        #[command(flatten)]
        grid: Grid,
        /// Positions y, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "0.9")]
        y: Vec<f64>,
    },
    /// Map between height x above the sonic point and position y.
    Map {
        /// Geometry as key=value pairs in cgs: r0, sigma_par, sigma_perp, J, M_star, R_star.
        #[arg(required = true)]
        geometry: Vec<String>,
        /// Positions y to map to heights.
        #[arg(long, value_delimiter = ',', conflicts_with = "x")]
        y: Vec<f64>,
        /// Heights x (cm) to map to positions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(run) => {
            print!("{}", run.text);
            if run.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
