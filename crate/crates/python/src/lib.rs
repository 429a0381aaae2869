//! Python bindings for the `pulsar-green` library.
//!
//! Every library error surfaces as `pulsar_green.PulsarGreenError`, a
//! subclass of `ValueError`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pulsar_green::{eigenbasis, flow, identities, spectral, specfun, Error};

create_exception!(pulsar_green, PulsarGreenError, PyValueError);

trait IntoPyResult<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(|e| PulsarGreenError::new_err(e.to_string()))
    }
}

/// Absorption strength `beta` and source position `y0`.
#[pyclass(name = "ProblemSpec", frozen, skip_from_py_object, module = "pulsar_green")]
#[derive(Clone)]
struct PyProblemSpec(spectral::ProblemSpec);

#[pymethods]
impl PyProblemSpec {
    #[new]
    fn new(beta: f64, y0: f64) -> PyResult<Self> {
        spectral::ProblemSpec::new(beta, y0).py().map(Self)
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta
    }

    #[getter]
    fn y0(&self) -> f64 {
        self.0.y0
    }

    fn __repr__(&self) -> String {
        format!("ProblemSpec(beta={}, y0={})", self.0.beta, self.0.y0)
    }
}

/// One eigenmode: eigenvalue, matching constants, normalization and coefficient.
#[pyclass(name = "EigenMode", frozen, skip_from_py_object, get_all, module = "pulsar_green")]
#[derive(Clone)]
struct PyEigenMode {
    n: usize,
    lambda_n: f64,
    b_n: f64,
    b_hat: f64,
    c_n: f64,
    a_hat: f64,
}

#[pymethods]
impl PyEigenMode {
    fn __repr__(&self) -> String {
        format!("EigenMode(n={}, lambda_n={}, c_n={})", self.n, self.lambda_n, self.c_n)
    }
}

impl From<&spectral::EigenMode> for PyEigenMode {
    fn from(m: &spectral::EigenMode) -> Self {
        Self {
            n: m.n,
            lambda_n: m.lambda,
            b_n: m.b_n,
            b_hat: m.b_hat,
            c_n: m.c_n,
            a_hat: m.a_hat,
        }
    }
}

/// Outcome of an identity check.
#[pyclass(name = "IdentityReport", frozen, skip_from_py_object, get_all, module = "pulsar_green")]
#[derive(Clone)]
struct PyIdentityReport {
    lhs: f64,
    rhs: f64,
    rel_gap: f64,
    terms_used: usize,
    method: &'static str,
}

#[pymethods]
impl PyIdentityReport {
    fn passes(&self, tol: f64) -> bool {
        self.rel_gap <= tol
    }

    fn __repr__(&self) -> String {
        format!(
            "IdentityReport(lhs={}, rhs={}, rel_gap={:.3e}, terms_used={}, method='{}')",
            self.lhs, self.rhs, self.rel_gap, self.terms_used, self.method
        )
    }
}

impl From<identities::IdentityReport> for PyIdentityReport {
    fn from(r: identities::IdentityReport) -> Self {
        Self {
            lhs: r.lhs,
            rhs: r.rhs,
            rel_gap: r.rel_gap,
            terms_used: r.terms_used,
            method: r.method.as_str(),
        }
    }
}

/// Tabulated source spectrum `j(epsilon0)`.
#[pyclass(name = "SourceSpectrum", frozen, skip_from_py_object, module = "pulsar_green")]
#[derive(Clone)]
struct PySourceSpectrum(spectral::SourceSpectrum);

#[pymethods]
impl PySourceSpectrum {
    #[new]
    fn new(energies: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        spectral::SourceSpectrum::new(energies, values).py().map(Self)
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        spectral::SourceSpectrum::from_file(path).py().map(Self)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        spectral::SourceSpectrum::parse(text).py().map(Self)
    }

    /// Planck-shaped source `e^2 / (exp(e / kT) - 1)` on the given grid.
    #[staticmethod]
    fn planck(kt: f64, grid: Vec<f64>) -> PyResult<Self> {
        spectral::SourceSpectrum::planck(kt, &grid).py().map(Self)
    }

    #[getter]
    fn energies(&self) -> Vec<f64> {
        self.0.energies().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

/// Truncated eigenfunction expansion of the Green's function.
#[pyclass(name = "GreensEvaluator", frozen, skip_from_py_object, module = "pulsar_green")]
struct PyGreensEvaluator(spectral::GreensEvaluator);

#[pymethods]
impl PyGreensEvaluator {
    #[new]
    #[pyo3(signature = (spec, n_terms = spectral::DEFAULT_TERMS))]
    fn new(py: Python<'_>, spec: &PyProblemSpec, n_terms: usize) -> PyResult<Self> {
        let s = spec.0;
        py.detach(|| spectral::build_evaluator(&s, n_terms)).py().map(Self)
    }

    #[getter]
    fn spec(&self) -> PyProblemSpec {
        PyProblemSpec(self.0.spec)
    }

    #[getter]
    fn n_terms(&self) -> usize {
        self.0.n_terms
    }

    #[getter]
    fn lambda0(&self) -> f64 {
        self.0.lambda0()
    }

    #[getter]
    fn eigenvalues(&self) -> Vec<f64> {
        self.0.modes.iter().map(|m| m.lambda).collect()
    }

    #[getter]
    fn modes(&self) -> Vec<PyEigenMode> {
        self.0.modes.iter().map(PyEigenMode::from).collect()
    }

    fn truncated(&self, n: usize) -> Self {
        Self(self.0.truncated(n))
    }

    /// Dimensionless Green's function at position `y` and energy ratio `e / e0`.
    fn greens(&self, y: f64, e_ratio: f64) -> PyResult<f64> {
        self.0.greens(y, e_ratio).py()
    }

    #[pyo3(signature = (y, e_ratios, pi_free = false))]
    fn spectrum(&self, y: f64, e_ratios: Vec<f64>, pi_free: bool) -> PyResult<Vec<f64>> {
        self.0.spectrum(y, &e_ratios, pi_free).py()
    }

    /// Weighted overlap of eigenfunctions `n` and `m` by quadrature.
    fn overlap_integral(&self, n: usize, m: usize) -> PyResult<f64> {
        self.0.overlap_integral(n, m).py().map(|r| r.value)
    }

    fn moment_series(&self, ell: f64, y: f64) -> PyResult<f64> {
        let ms = identities::MomentSpec::new(ell).py()?;
        identities::moment_series(&ms, &self.0, y).py()
    }

    fn check_summation_formula(&self, ell: f64, y: f64, n_sum: usize) -> PyResult<PyIdentityReport> {
        identities::check_summation_formula_with(&self.0, ell, y, n_sum).py().map(Into::into)
    }

    fn convolve(&self, source: &PySourceSpectrum, y: f64, epsilons: Vec<f64>) -> PyResult<Vec<f64>> {
        spectral::convolve_spectrum_many(&self.0, &source.0, y, &epsilons).py()
    }

    fn __repr__(&self) -> String {
        format!(
            "GreensEvaluator(beta={}, y0={}, n_terms={}, lambda0={})",
            self.0.spec.beta,
            self.0.spec.y0,
            self.0.n_terms,
            self.0.lambda0()
        )
    }
}

/// Accretion-column geometry in cgs units.
#[pyclass(name = "ColumnGeometry", frozen, skip_from_py_object, module = "pulsar_green")]
#[derive(Clone)]
struct PyColumnGeometry(flow::ColumnGeometry);

#[pymethods]
impl PyColumnGeometry {
    #[new]
    fn new(r0: f64, sigma_par: f64, sigma_perp: f64, j: f64, m_star: f64, r_star: f64) -> PyResult<Self> {
        flow::ColumnGeometry::new(r0, sigma_par, sigma_perp, j, m_star, r_star).py().map(Self)
    }

    /// Parses `key=value` pairs separated by spaces or commas.
    #[staticmethod]
    fn from_string(text: &str) -> PyResult<Self> {
        text.parse().py().map(Self)
    }

    /// `(v_c, x_st)` in cm/s and cm.
    fn sonic_constants(&self) -> (f64, f64) {
        let s = flow::sonic_constants(&self.0);
        (s.v_c, s.x_st)
    }

    fn x_of_y(&self, y: f64) -> PyResult<f64> {
        flow::x_of_y(&self.0, y).py()
    }

    fn y_of_x(&self, x: f64) -> PyResult<f64> {
        flow::y_of_x(&self.0, x).py()
    }

    fn escape_time(&self, y: f64) -> PyResult<f64> {
        flow::escape_time(&self.0, y).py()
    }

    fn __repr__(&self) -> String {
        format!("ColumnGeometry({})", self.0)
    }
}

#[pyfunction]
fn find_eigenvalues(spec: &PyProblemSpec, count: usize) -> PyResult<Vec<f64>> {
    spectral::find_eigenvalues(&spec.0, count).py()
}

#[pyfunction]
fn phi1(lambda_: f64, y: f64) -> PyResult<f64> {
    eigenbasis::phi1(lambda_, y).py()
}

#[pyfunction]
fn phi2(lambda_: f64, y: f64) -> PyResult<f64> {
    eigenbasis::phi2(lambda_, y).py()
}

#[pyfunction]
fn phi2_hat(lambda_: f64, y: f64) -> PyResult<f64> {
    eigenbasis::phi2_hat(lambda_, y).py()
}

#[pyfunction]
fn wronskian(lambda_: f64, y: f64) -> PyResult<f64> {
    eigenbasis::wronskian(lambda_, y).py()
}

#[pyfunction]
fn hyp2f1(a: f64, b: f64, c: f64, y: f64) -> PyResult<f64> {
    specfun::hyp2f1(a, b, c, y).py()
}

/// Jacobi polynomial `P_n^(5/4, 0)(1 - 2y)`.
#[pyfunction]
fn jacobi_p(n: u32, y: f64) -> f64 {
    specfun::jacobi_p(n, y)
}

#[pyfunction]
fn moment_closed(spec: &PyProblemSpec, ell: f64, y: f64) -> PyResult<f64> {
    let ms = identities::MomentSpec::new(ell).py()?;
    identities::moment_closed(&ms, &spec.0, y).py()
}

#[pyfunction]
fn bilinear_generating(y0: f64, y: f64, ell: f64, n_sum: usize) -> PyResult<PyIdentityReport> {
    identities::bilinear_generating(y0, y, ell, n_sum).py().map(Into::into)
}

#[pyfunction]
fn linear_generating(y: f64, ell: f64, n_sum: usize) -> PyResult<PyIdentityReport> {
    identities::linear_generating(y, ell, n_sum).py().map(Into::into)
}

#[pyfunction]
fn gamma_identity() -> PyResult<PyIdentityReport> {
    identities::gamma_identity().py().map(Into::into)
}

#[pymodule]
#[pyo3(name = "pulsar_green")]
fn pulsar_green_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PulsarGreenError", m.py().get_type::<PulsarGreenError>())?;
    m.add_class::<PyProblemSpec>()?;
    m.add_class::<PyEigenMode>()?;
    m.add_class::<PyIdentityReport>()?;
    m.add_class::<PySourceSpectrum>()?;
    m.add_class::<PyGreensEvaluator>()?;
    m.add_class::<PyColumnGeometry>()?;
    m.add_function(wrap_pyfunction!(find_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(phi1, m)?)?;
    m.add_function(wrap_pyfunction!(phi2, m)?)?;
    m.add_function(wrap_pyfunction!(phi2_hat, m)?)?;
    m.add_function(wrap_pyfunction!(wronskian, m)?)?;
    m.add_function(wrap_pyfunction!(hyp2f1, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_p, m)?)?;
    m.add_function(wrap_pyfunction!(moment_closed, m)?)?;
    m.add_function(wrap_pyfunction!(bilinear_generating, m)?)?;
    m.add_function(wrap_pyfunction!(linear_generating, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_identity, m)?)?;
    m.add("DEFAULT_TERMS", spectral::DEFAULT_TERMS)?;
    Ok(())
}
