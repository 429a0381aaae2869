use std::fs;

use pulsar_green::eigenbasis::{phi1, phi2, wronskian};
use pulsar_green::flow::{sonic_constants, velocity, x_of_y, y_of_x, ColumnGeometry};
use pulsar_green::identities::{
    bilinear_generating, check_summation_formula_with, gamma_identity, linear_generating, moment_closed,
    moment_series, MomentSpec,
};
use pulsar_green::spectral::{
    build_evaluator, convolve_spectrum_many, find_eigenvalues, log_grid, GreensEvaluator, ProblemSpec,
    SourceSpectrum,
};
use serde_json::{json, Value};

use crate::output::{Cell, Table};
use crate::{Cli, Command, Common, Grid};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Solver(#[from] pulsar_green::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

/// Rendered output plus whether every verification passed.
pub struct Run {
    pub text: String,
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Wronskian,
    Normalization,
    Orthogonality,
    Moments,
    Summation,
    Generating,
}

impl Suite {
    const ALL: [Suite; 6] = [
        Suite::Wronskian,
        Suite::Normalization,
        Suite::Orthogonality,
        Suite::Moments,
        Suite::Summation,
        Suite::Generating,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Wronskian => "wronskian",
            Suite::Normalization => "normalization",
            Suite::Orthogonality => "orthogonality",
            Suite::Moments => "moments",
            Suite::Summation => "summation",
            Suite::Generating => "generating",
        }
    }
}

const SERIES_TERMS: usize = 500;

pub fn run(cli: &Cli) -> Result<Run> {
    let common = &cli.common;
    let spec = ProblemSpec::new(common.beta, common.y0)?;
    if common.terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    let mut meta = json!({
        "command": command_name(&cli.command),
        "beta": common.beta,
        "y0": common.y0,
        "terms": common.terms,
        "format": format!("{:?}", common.format).to_lowercase(),
    });
    let mut verified = true;
    let table = match &cli.command {
        Command::Eigen {
            count,
            sweep_y0,
            betas,
            sweep_points,
        } => {
            extend(&mut meta, json!({"count": count.unwrap_or(common.terms), "sweep_y0": sweep_y0}));
            if *sweep_y0 {
                extend(&mut meta, json!({"betas": betas, "sweep_points": sweep_points}));
                eigen_sweep(betas, *sweep_points)?
            } else {
                eigen_table(&spec, count.unwrap_or(common.terms))?
            }
        }
        Command::Spectrum { grid, y, pi_free } => {
            extend(&mut meta, json!({"grid": grid_meta(grid), "y": y, "pi_free": pi_free}));
            spectrum(&spec, common, grid, y, *pi_free)?
        }
        Command::Moments { ell, y, series_terms } => {
            extend(&mut meta, json!({"ell": ell, "y": y, "series_terms": series_terms}));
            moments(&spec, *ell, y, *series_terms)?
        }
        Command::Verify { suite, perturb_lambda0 } => {
            let suites: Vec<Suite> = if suite.is_empty() { Suite::ALL.to_vec() } else { suite.clone() };
            let names: Vec<&str> = suites.iter().map(|s| s.name()).collect();
            extend(&mut meta, json!({"suites": names, "perturb_lambda0": perturb_lambda0}));
            let (table, ok) = verify(&spec, common.terms, &suites, *perturb_lambda0)?;
            verified = ok;
            extend(&mut meta, json!({"all_passed": ok}));
            table
        }
        Command::Convolve { source, grid, y } => {
            extend(
                &mut meta,
                json!({"source": source.display().to_string(), "grid": grid_meta(grid), "y": y}),
            );
            let text = fs::read_to_string(source).map_err(|e| CliError::Io {
                path: source.display().to_string(),
                source: e,
            })?;
            let src = SourceSpectrum::parse(&text)?;
            convolve(&spec, common, grid, y, &src)?
        }
        Command::Map { geometry, y, x } => {
            let geom = ColumnGeometry::from_pairs(geometry.iter().map(String::as_str))?;
            let sc = sonic_constants(&geom);
            extend(
                &mut meta,
                json!({"geometry": geom.to_string(), "v_c": sc.v_c, "x_st": sc.x_st, "y": y, "x": x}),
            );
            map(&geom, y, x)?
        }
    };
    Ok(Run {
        text: table.render(common.format, meta),
        verified,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eigen { .. } => "eigen",
        Command::Spectrum { .. } => "spectrum",
        Command::Moments { .. } => "moments",
        Command::Verify { .. } => "verify",
        Command::Convolve { .. } => "convolve",
        Command::Map { .. } => "map",
    }
}

fn extend(meta: &mut Value, more: Value) {
    if let (Value::Object(m), Value::Object(extra)) = (meta, more) {
        m.extend(extra);
    }
}

fn grid_meta(g: &Grid) -> Value {
    json!({"emin": g.emin, "emax": g.emax, "points": g.points})
}

fn energy_grid(g: &Grid) -> Result<Vec<f64>> {
    if !(g.emin >= 1.0) || !(g.emax > g.emin) || g.points < 2 {
        return Err(CliError::Usage(format!(
            "energy grid needs emin >= 1, emax > emin and points >= 2 (got {}, {}, {})",
            g.emin, g.emax, g.points
        )));
    }
    Ok(log_grid(g.emin, g.emax, g.points)?)
}

fn eigen_table(spec: &ProblemSpec, count: usize) -> Result<Table> {
    let ev = build_evaluator(spec, count)?;
    let mut t = Table::new(["n", "lambda_n", "B_n", "C_n", "A_hat_n"]);
    for m in &ev.modes {
        t.push(vec![m.n.into(), m.lambda.into(), m.b_n.into(), m.c_n.into(), m.a_hat.into()]);
    }
    Ok(t)
}

fn eigen_sweep(betas: &[f64], points: usize) -> Result<Table> {
    if points == 0 {
        return Err(CliError::Usage("--sweep-points must be at least 1".into()));
    }
    let mut t = Table::new(["beta", "y0", "lambda0"]);
    for &beta in betas {
        for k in 1..=points {
            let y0 = k as f64 / (points + 1) as f64;
            let lambda0 = find_eigenvalues(&ProblemSpec::new(beta, y0)?, 1)?[0];
            t.push(vec![beta.into(), y0.into(), lambda0.into()]);
        }
    }
    Ok(t)
}

fn spectrum(spec: &ProblemSpec, common: &Common, grid: &Grid, ys: &[f64], pi_free: bool) -> Result<Table> {
    let energies = energy_grid(grid)?;
    let ev = build_evaluator(spec, common.terms)?;
    let columns: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| ev.spectrum(y, &energies, pi_free))
        .collect::<std::result::Result<_, _>>()?;
    let mut t = Table::new(std::iter::once("e_ratio".to_string()).chain(ys.iter().map(|y| format!("f_hat(y={y})"))));
    for (i, &e) in energies.iter().enumerate() {
        let mut row: Vec<Cell> = vec![e.into()];
        row.extend(columns.iter().map(|c| Cell::from(c[i])));
        t.push(row);
    }
    Ok(t)
}

fn moments(spec: &ProblemSpec, ell: f64, ys: &[f64], series_terms: usize) -> Result<Table> {
    let ms = MomentSpec::new(ell)?;
    let ev = build_evaluator(spec, series_terms)?;
    let mut t = Table::new(["y", "closed", "series", "rel_gap"]);
    for &y in ys {
        let closed = moment_closed(&ms, spec, y)?;
        let series = moment_series(&ms, &ev, y)?;
        let gap = (closed - series).abs() / closed.abs().max(series.abs()).max(f64::MIN_POSITIVE);
        t.push(vec![y.into(), closed.into(), series.into(), gap.into()]);
    }
    Ok(t)
}

fn convolve(spec: &ProblemSpec, common: &Common, grid: &Grid, ys: &[f64], src: &SourceSpectrum) -> Result<Table> {
    let energies = energy_grid(grid)?;
    let ev = build_evaluator(spec, common.terms)?;
    let columns: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| convolve_spectrum_many(&ev, src, y, &energies))
        .collect::<std::result::Result<_, _>>()?;
    let mut t = Table::new(std::iter::once("epsilon".to_string()).chain(ys.iter().map(|y| format!("f(y={y})"))));
    for (i, &e) in energies.iter().enumerate() {
        let mut row: Vec<Cell> = vec![e.into()];
        row.extend(columns.iter().map(|c| Cell::from(c[i])));
        t.push(row);
    }
    Ok(t)
}

fn map(geom: &ColumnGeometry, ys: &[f64], xs: &[f64]) -> Result<Table> {
    if ys.is_empty() && xs.is_empty() {
        return Err(CliError::Usage("map needs --y or --x".into()));
    }
    let v_c = sonic_constants(geom).v_c;
    let pairs: Vec<(f64, f64)> = if xs.is_empty() {
        ys.iter().map(|&y| Ok((y, x_of_y(geom, y)?))).collect::<Result<_>>()?
    } else {
        xs.iter().map(|&x| Ok((y_of_x(geom, x)?, x))).collect::<Result<_>>()?
    };
    let mut t = Table::new(["y", "x", "v_over_vc", "v"]);
    for (y, x) in pairs {
        let v = velocity(y);
        t.push(vec![y.into(), x.into(), v.into(), (v * v_c).into()]);
    }
    Ok(t)
}

/// One identity check: computed and reference values and the gap measure.
struct Check {
    suite: Suite,
    name: String,
    lhs: f64,
    rhs: f64,
    gap: f64,
    tol: f64,
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn perturbed_evaluator(spec: &ProblemSpec, count: usize, shift: f64) -> Result<GreensEvaluator> {
    if shift == 0.0 {
        return Ok(build_evaluator(spec, count)?);
    }
    let mut lambdas = find_eigenvalues(spec, count)?;
    lambdas[0] += shift;
    Ok(GreensEvaluator::from_eigenvalues(spec, &lambdas)?)
}

fn verify(spec: &ProblemSpec, terms: usize, suites: &[Suite], shift: f64) -> Result<(Table, bool)> {
    let mut checks = Vec::new();
    let needs_long = suites.iter().any(|s| matches!(s, Suite::Moments | Suite::Summation));
    let short = perturbed_evaluator(spec, terms.clamp(11, SERIES_TERMS), shift)?;
    let long = if needs_long { Some(perturbed_evaluator(spec, SERIES_TERMS, shift)?) } else { None };

    for &suite in Suite::ALL.iter().filter(|s| suites.contains(s)) {
        match suite {
            Suite::Wronskian => {
                for (lambda, y) in [(-0.7, 0.3), (2.5, 0.6), (6.0, 0.3), (13.9, 0.8), (41.3, 0.45)] {
                    let h = 1e-6;
                    let d = |f: fn(f64, f64) -> pulsar_green::Result<f64>| -> Result<f64> {
                        Ok((f(lambda, y + h)? - f(lambda, y - h)?) / (2.0 * h))
                    };
                    let fd = phi1(lambda, y)? * d(phi2)? - phi2(lambda, y)? * d(phi1)?;
                    let closed = wronskian(lambda, y)?;
                    checks.push(Check {
                        suite,
                        name: format!("lambda={lambda} y={y}"),
                        lhs: closed,
                        rhs: fd,
                        gap: rel_gap(closed, fd),
                        tol: 1e-7,
                    });
                }
            }
            Suite::Normalization => {
                for n in 0..=10 {
                    let q = short.overlap_integral(n, n)?.value;
                    let c = short.modes[n].c_n;
                    checks.push(Check {
                        suite,
                        name: format!("n={n}"),
                        lhs: c,
                        rhs: q,
                        gap: rel_gap(c, q),
                        tol: 1e-6,
                    });
                }
            }
            Suite::Orthogonality => {
                for n in 0..=8 {
                    for m in (n + 1)..=8 {
                        let q = short.overlap_integral(n, m)?.value;
                        let scale = (short.modes[n].c_n * short.modes[m].c_n).sqrt();
                        checks.push(Check {
                            suite,
                            name: format!("n={n} m={m}"),
                            lhs: q,
                            rhs: 0.0,
                            gap: q.abs() / scale,
                            tol: 1e-6,
                        });
                    }
                }
            }
            Suite::Moments => {
                let ev = long.as_ref().expect("built when moments are requested");
                let ms = MomentSpec::new(2.0)?;
                for y in [0.2, 0.5, 0.8] {
                    let closed = moment_closed(&ms, spec, y)?;
                    let series = moment_series(&ms, ev, y)?;
                    checks.push(Check {
                        suite,
                        name: format!("ell=2 y={y}"),
                        lhs: series,
                        rhs: closed,
                        gap: rel_gap(series, closed),
                        tol: 1e-3,
                    });
                }
            }
            Suite::Summation => {
                let ev = long.as_ref().expect("built when summation is requested");
                // At y = y0 both branches meet and the tail only decays like 1/N,
                // so that row gets a looser tolerance.
                for (y, tol) in [(0.5, 1e-3), (spec.y0, 1e-2)] {
                    let r = check_summation_formula_with(ev, 2.0, y, SERIES_TERMS)?;
                    checks.push(Check {
                        suite,
                        name: format!("ell=2 y={y} terms={}", r.terms_used),
                        lhs: r.lhs,
                        rhs: r.rhs,
                        gap: r.rel_gap,
                        tol,
                    });
                }
            }
            Suite::Generating => {
                let reports = [
                    ("bilinear y0=0.3 y=0.7 ell=2", bilinear_generating(0.3, 0.7, 2.0, SERIES_TERMS)?, 1e-3),
                    ("linear y=0.6 ell=2", linear_generating(0.6, 2.0, SERIES_TERMS)?, 1e-3),
                    ("gamma identity", gamma_identity()?, 1e-12),
                ];
                for (name, r, tol) in reports {
                    checks.push(Check {
                        suite,
                        name: format!("{name} ({})", r.method.as_str()),
                        lhs: r.lhs,
                        rhs: r.rhs,
                        gap: r.rel_gap,
                        tol,
                    });
                }
            }
        }
    }

    let mut t = Table::new(["suite", "check", "lhs", "rhs", "gap", "tolerance", "pass"]);
    let mut all = true;
    for c in checks {
        let pass = c.gap <= c.tol;
        all &= pass;
        t.push(vec![
            c.suite.name().into(),
            c.name.into(),
            c.lhs.into(),
            c.rhs.into(),
            c.gap.into(),
            c.tol.into(),
            pass.into(),
        ]);
    }
    Ok((t, all))
}
