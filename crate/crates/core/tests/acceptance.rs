//! Acceptance suite. Each criterion prints one PASS/FAIL line with the
//! measured quantity; the test fails if any criterion fails.
//!
//! Run with `cargo test -p pulsar-green --test acceptance -- --nocapture`.

use std::time::Instant;

use pulsar_green::eigenbasis::{phi1, phi2, spectral_params, wronskian, BasisFunction};
use pulsar_green::identities::{
    bilinear_generating, check_summation_formula_with, gamma_identity, linear_generating, moment_closed,
    moment_series, MomentSpec,
};
use pulsar_green::spectral::{
    build_evaluator, find_eigenvalues, log_grid, scan_eigenvalues, unabsorbed_eigenvalue, ProblemSpec,
};
use pulsar_green::specfun::{hyp2f1, hyp2f1_logcase, Y_SWITCH};
use pulsar_green::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fig2() -> ProblemSpec {
    ProblemSpec::new(0.4, 0.9).unwrap()
}

fn fig3() -> ProblemSpec {
    ProblemSpec::new(4.0, 0.4).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn c1_eigenvalues() -> Outcome {
    let mut worst_dev: f64 = 0.0;
    let mut worst_time: f64 = 0.0;
    let mut vals = Vec::new();
    for (spec, target) in [(fig2(), 4.231), (fig3(), 6.325)] {
        let t = Instant::now();
        let l0 = find_eigenvalues(&spec, 1).unwrap()[0];
        worst_time = worst_time.max(t.elapsed().as_secs_f64());
        worst_dev = worst_dev.max((l0 - target).abs());
        vals.push(l0);
    }
    outcome(
        worst_dev <= 1e-3 && worst_time < 5.0,
        format!(
            "lambda0 = {:.6} and {:.6}; max |dev| = {worst_dev:.2e}; max time {worst_time:.3} s",
            vals[0], vals[1]
        ),
    )
}

fn c2_unabsorbed_spectrum() -> Outcome {
    let spec = ProblemSpec::new(0.0, 0.5).unwrap();
    let roots = scan_eigenvalues(&spec, 11).unwrap();
    let worst = roots
        .iter()
        .enumerate()
        .map(|(n, r)| (r - unabsorbed_eigenvalue(n)).abs())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-6, format!("general root search, n = 0..10: max |dlambda| = {worst:.2e}"))
}

fn c3_normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for spec in [fig2(), fig3()] {
        let ev = build_evaluator(&spec, 11).unwrap();
        for n in 0..=10 {
            let q = ev.overlap_integral(n, n).unwrap().value;
            worst = worst.max(rel(q, ev.modes[n].c_n));
        }
    }
    outcome(worst <= 1e-6, format!("closed form vs quadrature, n <= 10, both specs: max rel = {worst:.2e}"))
}

fn c4_orthogonality() -> Outcome {
    let mut worst: f64 = 0.0;
    for spec in [fig2(), fig3()] {
        let ev = build_evaluator(&spec, 9).unwrap();
        for n in 0..=8 {
            for m in (n + 1)..=8 {
                let q = ev.overlap_integral(n, m).unwrap().value;
                let scale = (ev.modes[n].c_n * ev.modes[m].c_n).sqrt();
                worst = worst.max(q.abs() / scale);
            }
        }
    }
    outcome(worst <= 1e-6, format!("max |<g_n, g_m>| / sqrt(C_n C_m), n != m <= 8: {worst:.2e}"))
}

fn fd_wronskian(lambda: f64, y: f64) -> f64 {
    let h = 1e-6;
    let d = |f: &dyn Fn(f64) -> f64| (f(y + h) - f(y - h)) / (2.0 * h);
    let p1 = |t: f64| phi1(lambda, t).unwrap();
    let p2 = |t: f64| phi2(lambda, t).unwrap();
    p1(y) * d(&p2) - p2(y) * d(&p1)
}

fn random_points(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.random_range(-1.0..60.0), rng.random_range(0.05..0.95)))
        .collect()
}

fn c5_wronskian() -> Outcome {
    let mut worst_fd: f64 = 0.0;
    for (lambda, y) in random_points(5, 20) {
        worst_fd = worst_fd.max(rel(wronskian(lambda, y).unwrap(), fd_wronskian(lambda, y)));
    }
    let mut worst_inv: f64 = 0.0;
    for lambda in [-0.7, 2.5, 6.0, 13.9, 41.3] {
        let scaled = |y: f64| wronskian(lambda, y).unwrap() * y.powf(0.25) * (1.0 - y);
        let base = scaled(0.1);
        for y in [0.3, 0.5, 0.7, 0.9] {
            worst_inv = worst_inv.max(rel(scaled(y), base));
        }
    }
    outcome(
        worst_fd <= 1e-7 && worst_inv <= 1e-10,
        format!("closed vs finite-difference max rel = {worst_fd:.2e}; y^(1/4)(1-y)W spread = {worst_inv:.2e}"),
    )
}

const SPECTRUM_YS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

fn c6_truncation() -> Outcome {
    let ev60 = build_evaluator(&fig2(), 60).unwrap();
    let ev20 = ev60.truncated(20);
    // The injection point e = 1 carries the delta-function part of the
    // solution, where no truncation converges; the grid starts one step above.
    let grid: Vec<f64> = log_grid(1.0, 1e4, 201).unwrap().into_iter().skip(1).collect();
    let mut worst: f64 = 0.0;
    for y in SPECTRUM_YS {
        let a = ev20.spectrum(y, &grid, false).unwrap();
        let b = ev60.spectrum(y, &grid, false).unwrap();
        for (u, v) in a.iter().zip(&b) {
            worst = worst.max((u - v).abs() / v.abs());
        }
    }
    outcome(worst <= 1e-5, format!("max |f20 - f60| / |f60| on 200 points in (1, 1e4]: {worst:.2e}"))
}

fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn c7_tail_slope() -> Outcome {
    let grid = log_grid(1e2, 1e3, 50).unwrap();
    let mut worst: f64 = 0.0;
    for spec in [fig2(), fig3()] {
        let ev = build_evaluator(&spec, 20).unwrap();
        for y in SPECTRUM_YS {
            let f = ev.spectrum(y, &grid, false).unwrap();
            let slope = fitted_slope(&grid, &f);
            worst = worst.max((slope + ev.lambda0()).abs() / ev.lambda0());
        }
    }
    outcome(worst <= 0.01, format!("fitted slope on [1e2, 1e3] vs -lambda0: max rel dev = {worst:.2e}"))
}

fn c8_moments() -> Outcome {
    let ms = MomentSpec::new(2.0).unwrap();
    let mut worst: f64 = 0.0;
    for spec in [fig2(), fig3()] {
        let ev = build_evaluator(&spec, 500).unwrap();
        for y in [0.2, 0.5, 0.8] {
            let closed = moment_closed(&ms, &spec, y).unwrap();
            let series = moment_series(&ms, &ev, y).unwrap();
            worst = worst.max(rel(closed, series));
        }
    }
    let unabsorbed = ProblemSpec::new(0.0, 0.5).unwrap();
    let ev0 = build_evaluator(&unabsorbed, 20).unwrap();
    let diverges = matches!(
        moment_series(&MomentSpec::new(3.0).unwrap(), &ev0, 0.5),
        Err(Error::DivergentMoment { .. })
    );
    outcome(
        worst <= 1e-3 && diverges,
        format!("l = 2 closed vs 500-term series max rel = {worst:.2e}; beta = 0, l = 3 diverges: {diverges}"),
    )
}

fn c9_summation() -> Outcome {
    let ev = build_evaluator(&fig2(), 500).unwrap();
    let r500 = check_summation_formula_with(&ev, 2.0, 0.5, 500).unwrap();
    let r250 = check_summation_formula_with(&ev, 2.0, 0.5, 250).unwrap();
    let ratio = r250.rel_gap / r500.rel_gap;
    outcome(
        r500.rel_gap <= 1e-3 && ratio >= 2.0,
        format!(
            "beta 0.4, y0 0.9, l 2, y 0.5: gap(500) = {:.2e}, gap(250)/gap(500) = {ratio:.3}",
            r500.rel_gap
        ),
    )
}

fn c10_generating() -> Outcome {
    let bil = bilinear_generating(0.3, 0.7, 2.0, 500).unwrap();
    let lin = linear_generating(0.6, 2.0, 500).unwrap();
    let gam = gamma_identity().unwrap();
    outcome(
        bil.rel_gap <= 1e-3 && lin.rel_gap <= 1e-3 && gam.rel_gap <= 1e-12,
        format!(
            "bilinear gap {:.2e}; linear ({}) gap {:.2e}; gamma identity gap {:.2e}",
            bil.rel_gap,
            lin.method.as_str(),
            lin.rel_gap,
            gam.rel_gap
        ),
    )
}

fn ode_residual(f: BasisFunction, lambda: f64, y: f64) -> f64 {
    let h = 1e-3 * y.min(1.0 - y);
    let v = |t: f64| f.eval(lambda, t).unwrap();
    let (m2, m1, z, p1, p2) = (v(y - 2.0 * h), v(y - h), v(y), v(y + h), v(y + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
    let t1 = y * (1.0 - y) * d2;
    let t2 = (1.0 - 5.0 * y) / 4.0 * d1;
    let t3 = (lambda * y + y - 1.0) / (4.0 * y) * z;
    (t1 + t2 + t3).abs() / (t1.abs() + t2.abs() + t3.abs())
}

fn c11_ode_and_branches() -> Outcome {
    let mut worst_ode: f64 = 0.0;
    for (lambda, y) in random_points(11, 20) {
        for f in [BasisFunction::Phi1, BasisFunction::Phi2] {
            worst_ode = worst_ode.max(ode_residual(f, lambda, y));
        }
    }
    let mut worst_branch: f64 = 0.0;
    for lambda in [-0.9, 3.0, 6.325, 11.7, 25.0] {
        let p = spectral_params(lambda).unwrap();
        let lo = hyp2f1(p.a, p.b, p.c, Y_SWITCH).unwrap();
        let hi = hyp2f1_logcase(p.a, p.b, Y_SWITCH).unwrap();
        worst_branch = worst_branch.max(rel(lo, hi));
        for f in [BasisFunction::Phi1, BasisFunction::Phi2] {
            let below = f.eval(lambda, Y_SWITCH * (1.0 - 1e-15)).unwrap();
            let above = f.eval(lambda, Y_SWITCH * (1.0 + 1e-15)).unwrap();
            worst_branch = worst_branch.max(rel(below, above));
        }
    }
    outcome(
        worst_ode <= 1e-5 && worst_branch <= 1e-10,
        format!("max scaled ODE residual = {worst_ode:.2e}; max branch mismatch at y = 0.5: {worst_branch:.2e}"),
    )
}

fn fig1_sweep() -> Outcome {
    let y0s: Vec<f64> = (1..=19).map(|k| k as f64 * 0.05).collect();
    let betas = [0.0, 0.4, 1.0, 2.0, 4.0];
    let curves: Vec<Vec<f64>> = betas
        .iter()
        .map(|&beta| {
            y0s.iter()
                .map(|&y0| find_eigenvalues(&ProblemSpec::new(beta, y0).unwrap(), 1).unwrap()[0])
                .collect()
        })
        .collect();
    let monotone_in_beta = (0..y0s.len()).all(|i| curves.windows(2).all(|w| w[1][i] > w[0][i]));
    let double_valued = curves[1..].iter().all(|c| {
        let (imax, _) = c
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        imax > 0 && imax < c.len() - 1
    });
    outcome(
        monotone_in_beta && double_valued,
        format!("lambda0 strictly increasing in beta: {monotone_in_beta}; interior maximum in y0 for every beta > 0: {double_valued}"),
    )
}

#[test]
fn acceptance_suite() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1  eigenvalue reproduction", c1_eigenvalues),
        ("2  beta = 0 spectrum", c2_unabsorbed_spectrum),
        ("3  normalization cross-check", c3_normalization),
        ("4  orthogonality", c4_orthogonality),
        ("5  Wronskian", c5_wronskian),
        ("6  truncation convergence", c6_truncation),
        ("7  power-law tail", c7_tail_slope),
        ("8  moments", c8_moments),
        ("9  summation formula", c9_summation),
        ("10 generating functions", c10_generating),
        ("11 basis ODE and branch continuity", c11_ode_and_branches),
        ("F1 lambda0 sweep properties", fig1_sweep),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name}: {} [{:.2} s]", o.detail, t.elapsed().as_secs_f64());
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
