use std::process::{Command, Output};

use pulsar_green::flow::{sonic_constants, ColumnGeometry};
use pulsar_green::spectral::{build_evaluator, convolve_spectrum_many, log_grid, ProblemSpec, SourceSpectrum};
use serde_json::Value;

const GEOMETRY: [&str; 6] = [
    "r0=1e5",
    "sigma_par=1e-24",
    "sigma_perp=6.65e-25",
    "J=8.1e39",
    "M_star=2.7846e33",
    "R_star=1e6",
];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pulsar-green"))
        .args(args)
        .env_remove("PULSAR_GREEN_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses CSV output into the header and rows of fields.
fn csv(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(out);
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    (header, rows)
}

fn column(rows: &[Vec<String>], k: usize) -> Vec<f64> {
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn eigen_reference_values() {
    let (header, rows) = csv(&run(&["eigen", "--beta", "0.4", "--y0", "0.9", "--count", "1"]));
    assert_eq!(header, ["n", "lambda_n", "B_n", "C_n", "A_hat_n"]);
    assert!((column(&rows, 1)[0] - 4.231).abs() <= 1e-3);

    let (_, rows) = csv(&run(&["eigen", "--beta", "4", "--y0", "0.4", "--count", "1"]));
    assert!((column(&rows, 1)[0] - 6.325).abs() <= 1e-3);

    let (_, rows) = csv(&run(&["eigen", "--beta", "0", "--y0", "0.5", "--count", "3"]));
    assert_eq!(column(&rows, 1), [4.0, 17.0, 38.0]);
}

#[test]
fn csv_numbers_have_twelve_significant_digits() {
    let (_, rows) = csv(&run(&["eigen", "--count", "1"]));
    let mantissa = rows[0][1].split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 12);
}

#[test]
fn terms_from_environment_and_flag_precedence() {
    let bin = env!("CARGO_BIN_EXE_pulsar-green");
    let count = |extra: &[&str]| {
        let out = Command::new(bin)
            .arg("eigen")
            .args(extra)
            .env("PULSAR_GREEN_TERMS", "3")
            .output()
            .unwrap();
        stdout(&out).lines().count() - 1
    };
    assert_eq!(count(&[]), 3);
    assert_eq!(count(&["--terms", "5"]), 5);
    assert_eq!(csv(&run(&["eigen"])).1.len(), 20);
}

#[test]
fn sweep_has_interior_maximum() {
    let (header, rows) = csv(&run(&["eigen", "--sweep-y0", "--betas", "1", "--sweep-points", "9"]));
    assert_eq!(header, ["beta", "y0", "lambda0"]);
    let l = column(&rows, 2);
    let imax = (0..l.len()).max_by(|&i, &j| l[i].total_cmp(&l[j])).unwrap();
    assert!(imax > 0 && imax < l.len() - 1, "{l:?}");
}

#[test]
fn json_has_meta_and_columns() {
    let out = run(&["eigen", "--count", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["meta"]["command"], "eigen");
    assert_eq!(v["meta"]["beta"], 0.4);
    assert_eq!(v["meta"]["y0"], 0.9);
    assert_eq!(v["data"]["n"], serde_json::json!([0, 1]));
    assert_eq!(v["data"]["lambda_n"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--points", "40", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn spectrum_columns() {
    let (header, rows) = csv(&run(&["spectrum", "--y", "0.1,0.9", "--points", "60"]));
    assert_eq!(header, ["e_ratio", "f_hat(y=0.1)", "f_hat(y=0.9)"]);
    let e = column(&rows, 0);
    let low = column(&rows, 1);
    let at_source = column(&rows, 2);
    assert_eq!(e[0], 1.0);
    assert!(at_source[0].is_finite() && at_source[0] > 0.0);
    assert!(low.iter().zip(&at_source).all(|(a, b)| a < b));

    // Slope over the last decade approaches -lambda0.
    let k = e.iter().position(|&x| x >= 1e3).unwrap();
    let n = e.len() - 1;
    let slope = (at_source[n].ln() - at_source[k].ln()) / (e[n].ln() - e[k].ln());
    assert!((slope + 4.2308).abs() / 4.2308 < 0.01, "slope {slope}");
}

#[test]
fn pi_free_units_divide_by_pi() {
    let (_, plain) = csv(&run(&["spectrum", "--y", "0.5", "--points", "5"]));
    let (_, free) = csv(&run(&["spectrum", "--y", "0.5", "--points", "5", "--pi-free"]));
    for (a, b) in column(&plain, 1).iter().zip(column(&free, 1)) {
        assert!((a / std::f64::consts::PI - b).abs() <= 1e-11 * b.abs());
    }
}

#[test]
fn moments_closed_and_series_agree() {
    let (header, rows) = csv(&run(&["moments", "--ell", "2"]));
    assert_eq!(header, ["y", "closed", "series", "rel_gap"]);
    assert_eq!(rows.len(), 3);
    assert!(column(&rows, 3).iter().all(|&g| g <= 1e-3));
}

#[test]
fn moments_divergent_case_is_an_error() {
    let out = run(&["moments", "--beta", "0", "--y0", "0.5", "--ell", "3", "--series-terms", "20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_default_passes_on_reference_specs() {
    for spec in [["--beta", "0.4", "--y0", "0.9"], ["--beta", "4", "--y0", "0.4"]] {
        let out = run(&[&["verify"], &spec[..]].concat());
        let (header, rows) = csv(&out);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(header.last().unwrap(), "pass");
        assert!(rows.iter().all(|r| r.last().unwrap() == "true"));
        for suite in ["wronskian", "normalization", "orthogonality", "moments", "summation", "generating"] {
            assert!(rows.iter().any(|r| r[0] == suite), "missing suite {suite}");
        }
    }
}

#[test]
fn verify_suite_filter() {
    let (_, rows) = csv(&run(&["verify", "--suite", "orthogonality"]));
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[0] == "orthogonality"));
}

#[test]
fn verify_detects_perturbed_eigenvalue() {
    let out = run(&["verify", "--suite", "orthogonality", "--perturb-lambda0", "1e-3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains(",false"));
}

#[test]
fn convolve_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("planck.csv");
    let grid = log_grid(0.05, 20.0, 300).unwrap();
    let source = SourceSpectrum::planck(1.0, &grid).unwrap();
    std::fs::write(&path, source.to_text()).unwrap();

    let out = run(&["convolve", "--source", path.to_str().unwrap(), "--points", "8", "--emax", "100", "--y", "0.5"]);
    let (header, rows) = csv(&out);
    assert_eq!(header, ["epsilon", "f(y=0.5)"]);

    let spec = ProblemSpec::new(0.4, 0.9).unwrap();
    let ev = build_evaluator(&spec, 20).unwrap();
    let eps = column(&rows, 0);
    let expected = convolve_spectrum_many(&ev, &source, 0.5, &eps).unwrap();
    for (got, want) in column(&rows, 1).iter().zip(&expected) {
        assert!((got - want).abs() <= 1e-11 * want.abs(), "{got} vs {want}");
    }
}

#[test]
fn convolve_missing_file_is_an_error() {
    let out = run(&["convolve", "--source", "/nonexistent/source.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn map_surface_is_at_sonic_distance() {
    let out = run(&[&["map", "--y", "1.0", "--format", "json"], &GEOMETRY[..]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let geom = ColumnGeometry::from_pairs(GEOMETRY).unwrap();
    let x_st = sonic_constants(&geom).x_st;
    assert!((v["meta"]["x_st"].as_f64().unwrap() - x_st).abs() <= 1e-12 * x_st);
    let x = v["data"]["x"][0].as_f64().unwrap();
    assert!((x - x_st).abs() <= 1e-12 * x_st);
    assert_eq!(v["data"]["v_over_vc"][0], 0.0);
}

#[test]
fn map_round_trip_from_heights() {
    let (_, rows) = csv(&run(&[&["map", "--x=-2e4,0"], &GEOMETRY[..]].concat()));
    let y = column(&rows, 0);
    assert!(y[0] < y[1]);
    assert!((y[1] - 3.0 / 7.0).abs() < 1e-12);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(run(&["eigen", "--y0", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["eigen", "--beta", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--emin", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["map", "r0=1e5"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}
