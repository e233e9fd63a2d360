use num_complex::Complex64;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use markov_spectra::ensembles::{self, SeededStream};
use markov_spectra::experiments::{self, ExperimentConfig, ExperimentKind};
use markov_spectra::linalg::{self, Matrix};
use markov_spectra::oracles::{self, Lemma};
use markov_spectra::stats::{self, EmpiricalMeasure, ReferenceLaw};
use markov_spectra::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::InvalidLaw(_) | Error::Dimension(_) | Error::Shape(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn matrix(rows: Vec<Vec<f64>>) -> PyResult<Matrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    let n = rows.len();
    Matrix::from_vec(n, cols, rows.into_iter().flatten().collect()).map_err(to_py)
}

fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Entry law parsed from `family[:key=value,...]`, e.g. `bernoulli:p=0.5`.
#[pyclass(name = "EntryLaw", frozen, from_py_object)]
#[derive(Clone)]
struct PyEntryLaw(ensembles::EntryLaw);

#[pymethods]
impl PyEntryLaw {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(to_py)
    }

    #[getter]
    fn mean(&self) -> f64 {
        self.0.mean()
    }

    #[getter]
    fn variance(&self) -> f64 {
        self.0.variance()
    }

    /// `sigma / m`.
    #[getter]
    fn effective_radius(&self) -> f64 {
        self.0.effective_radius()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("EntryLaw('{}')", self.0)
    }
}

/// A draw of `X` and its row normalization `M = D X`.
#[pyclass(name = "MarkovSample", frozen)]
struct PyMarkovSample(ensembles::MarkovSample);

#[pymethods]
impl PyMarkovSample {
    #[getter]
    fn n(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn x(&self) -> Vec<Vec<f64>> {
        rows(&self.0.x)
    }

    #[getter]
    fn m(&self) -> Vec<Vec<f64>> {
        rows(&self.0.m_matrix)
    }

    #[getter]
    fn row_sums(&self) -> Vec<f64> {
        self.0.row_sums.clone()
    }

    /// Rows of `X` that were zero and were replaced by a unit loop.
    #[getter]
    fn fallback_rows(&self) -> Vec<usize> {
        self.0.fallback_rows.clone()
    }

    fn eigenvalues(&self, py: Python<'_>) -> PyResult<Vec<Complex64>> {
        py.detach(|| linalg::eigenvalues(&self.0.m_matrix)).map_err(to_py)
    }

    /// Singular values of `sqrt(n) M`.
    fn scaled_singular_values(&self, py: Python<'_>) -> PyResult<Vec<f64>> {
        py.detach(|| linalg::singular_values(&self.0.scaled_markov())).map_err(to_py)
    }
}

#[pyclass(name = "CheckReport", frozen, get_all)]
struct PyCheckReport {
    lemma_id: String,
    passed: bool,
    worst_margin: f64,
    tolerance: f64,
    witness: String,
    flags: Vec<String>,
    instances: usize,
}

#[pymethods]
impl PyCheckReport {
    fn __str__(&self) -> String {
        let flags = if self.flags.is_empty() { String::new() } else { format!(" flags={}", self.flags.join(",")) };
        format!(
            "{} {} instances={} worst_margin={:e} witness=[{}]{flags}",
            self.lemma_id,
            if self.passed { "PASS" } else { "FAIL" },
            self.instances,
            self.worst_margin,
            self.witness
        )
    }
}

impl From<oracles::CheckReport> for PyCheckReport {
    fn from(r: oracles::CheckReport) -> Self {
        Self {
            lemma_id: r.lemma_id,
            passed: r.passed,
            worst_margin: r.worst_margin,
            tolerance: r.tolerance,
            witness: r.witness,
            flags: r.flags,
            instances: r.instances,
        }
    }
}

#[pyclass(name = "ExperimentReport", frozen)]
struct PyExperimentReport(experiments::ExperimentReport);

#[pymethods]
impl PyExperimentReport {
    #[getter]
    fn experiment_id(&self) -> String {
        self.0.experiment_id.clone()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    /// `(n, statistic, value, reference, tolerance, pass, source)` tuples;
    /// `n` and `pass` are `None` where they do not apply.
    #[getter]
    #[allow(clippy::type_complexity)]
    fn rows(&self) -> Vec<(Option<usize>, String, f64, f64, f64, Option<bool>, String)> {
        self.0
            .rows
            .iter()
            .map(|r| (r.n, r.statistic.clone(), r.value, r.reference, r.tolerance, r.pass(), r.source.to_string()))
            .collect()
    }

    #[getter]
    fn artifacts(&self) -> Vec<String> {
        self.0.artifacts.iter().map(|p| p.display().to_string()).collect()
    }

    fn summary_csv(&self) -> String {
        self.0.summary_csv()
    }

    fn __str__(&self) -> String {
        self.0.text()
    }
}

/// Samples `M` for `n`, `law` and the stream `(seed, replica)`.
#[pyfunction]
#[pyo3(signature = (n, law = "exponential", seed = 42, replica = 0))]
fn sample_markov(n: usize, law: &str, seed: u64, replica: u64) -> PyResult<PyMarkovSample> {
    let law: ensembles::EntryLaw = law.parse().map_err(to_py)?;
    ensembles::markov_sample(n, &law, SeededStream::new(seed, replica)).map(PyMarkovSample).map_err(to_py)
}

/// Singular values of a real matrix, descending.
#[pyfunction]
fn singular_values(py: Python<'_>, a: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
    let a = matrix(a)?;
    py.detach(|| linalg::singular_values(&a)).map_err(to_py)
}

/// Eigenvalues of a real square matrix, by decreasing modulus.
#[pyfunction]
fn eigenvalues(py: Python<'_>, a: Vec<Vec<f64>>) -> PyResult<Vec<Complex64>> {
    let a = matrix(a)?;
    py.detach(|| linalg::eigenvalues(&a)).map_err(to_py)
}

#[pyfunction]
fn quartercircular_cdf(t: f64, sigma: f64) -> f64 {
    stats::quartercircular_cdf(t, sigma)
}

/// Kolmogorov distance of the empirical law of `values` to the quartercircular law.
#[pyfunction]
fn quartercircular_distance(values: Vec<f64>, sigma: f64) -> PyResult<f64> {
    let mu = EmpiricalMeasure::real(values).map_err(to_py)?;
    let law = ReferenceLaw::quartercircular(sigma).map_err(to_py)?;
    stats::kolmogorov_distance(&mu, &law).map_err(to_py)
}

/// Sup distance between the radial CDF of `points` and `(r / sigma)^2`.
#[pyfunction]
fn radial_distance(points: Vec<Complex64>, sigma: f64) -> PyResult<f64> {
    let mu = EmpiricalMeasure::complex(points).map_err(to_py)?;
    stats::radial_kolmogorov_distance(&mu, sigma).map_err(to_py)
}

/// Fuzz campaign of one lemma (`distance-concentration` runs its fixed suite).
#[pyfunction]
#[pyo3(signature = (lemma, instances = 1000, seed = 42))]
fn check_lemma(py: Python<'_>, lemma: &str, instances: usize, seed: u64) -> PyResult<PyCheckReport> {
    let lemma: Lemma = lemma.parse().map_err(to_py)?;
    let report = py.detach(|| match lemma {
        Lemma::DistanceConcentration => oracles::concentration_suite(instances, seed),
        _ => oracles::fuzz_campaign(lemma, instances, seed),
    });
    report.map(Into::into).map_err(to_py)
}

#[pyfunction]
fn check_special_matrix(n: usize, z: Complex64) -> PyResult<PyCheckReport> {
    oracles::check_special_matrix_a(n, z).map(Into::into).map_err(to_py)
}

/// Runs an experiment; keyword arguments are config keys (`n="100,200"`, `law=...`).
#[pyfunction]
#[pyo3(signature = (kind, **settings))]
fn run_experiment(
    py: Python<'_>,
    kind: &str,
    settings: Option<std::collections::HashMap<String, Bound<'_, PyAny>>>,
) -> PyResult<PyExperimentReport> {
    let kind: ExperimentKind = kind.parse().map_err(to_py)?;
    let mut cfg = ExperimentConfig::new(kind);
    for (key, value) in settings.unwrap_or_default() {
        cfg.apply(&key, &value.str()?.to_string()).map_err(to_py)?;
    }
    cfg.validate().map_err(to_py)?;
    py.detach(|| experiments::run_experiment(&cfg)).map(PyExperimentReport).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "markov_spectra")]
fn markov_spectra_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEntryLaw>()?;
    m.add_class::<PyMarkovSample>()?;
    m.add_class::<PyCheckReport>()?;
    m.add_class::<PyExperimentReport>()?;
    m.add_function(wrap_pyfunction!(sample_markov, m)?)?;
    m.add_function(wrap_pyfunction!(singular_values, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(quartercircular_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(quartercircular_distance, m)?)?;
    m.add_function(wrap_pyfunction!(radial_distance, m)?)?;
    m.add_function(wrap_pyfunction!(check_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(check_special_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
