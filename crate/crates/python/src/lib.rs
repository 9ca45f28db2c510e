//! Python bindings for `codespectra`.

use std::path::PathBuf;
use std::sync::Arc;

use num_complex::Complex64;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use codespectra::codes::{self, LinearCode, NamedCode};
use codespectra::eigen::{self, ComplexMatrix};
use codespectra::field::FieldSpec;
use codespectra::harness::{self, ExperimentConfig, RateSample};
use codespectra::matrix::{self, SamplingMode};
use codespectra::stats::{self, EmpiricalSpectralDistribution};
use codespectra::{semicircle, Error};

/// (holds, witness support, witness coefficients)
type Certificate = (bool, Option<Vec<usize>>, Option<Vec<u32>>);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io { .. } => PyOSError::new_err(err.to_string()),
        Error::NotHermitian { .. } | Error::NoConvergence { .. } | Error::Singular => {
            PyRuntimeError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn parse_mode(mode: &str) -> PyResult<SamplingMode> {
    mode.parse().map_err(to_py)
}

fn esd(eigenvalues: Vec<f64>) -> PyResult<EmpiricalSpectralDistribution> {
    EmpiricalSpectralDistribution::from_atoms(eigenvalues).map_err(to_py)
}

/// GF(p^m) with elements encoded as integers (bit masks for p = 2,
/// base-p digits otherwise).
#[pyclass(name = "Field", module = "codespectra", frozen)]
struct PyField {
    inner: Arc<FieldSpec>,
}

impl PyField {
    fn check(&self, a: u32) -> PyResult<u32> {
        if (a as u64) < self.inner.order() {
            Ok(a)
        } else {
            Err(PyValueError::new_err(format!(
                "{a} is not an element of GF({})",
                self.inner.order()
            )))
        }
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m=1, modulus=None))]
    fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let spec = match modulus {
            Some(coeffs) => FieldSpec::new(p, m, coeffs),
            None => FieldSpec::with_default_modulus(p, m),
        }
        .map_err(to_py)?;
        Ok(PyField {
            inner: Arc::new(spec),
        })
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    #[getter]
    fn generator(&self) -> u32 {
        self.inner.generator()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.add(self.check(a)?, self.check(b)?))
    }

    fn sub(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.sub(self.check(a)?, self.check(b)?))
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.mul(self.check(a)?, self.check(b)?))
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        self.inner
            .inv(self.check(a)?)
            .ok_or_else(|| PyValueError::new_err("zero has no inverse"))
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.check(a)?, e))
    }

    /// Absolute trace into GF(p), returned as an integer in 0..p.
    fn trace(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.trace(self.check(a)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Field(p={}, m={})",
            self.inner.characteristic(),
            self.inner.degree()
        )
    }
}

/// A linear code given by a full-rank generator matrix.
#[pyclass(name = "Code", module = "codespectra", frozen)]
struct PyCode {
    inner: LinearCode,
}

#[pymethods]
impl PyCode {
    /// Builds `gold:m=5`, `gold+1:m=7`, `rm1:m=4`, ...
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let inner = NamedCode::parse(name)
            .and_then(|c| c.build())
            .map_err(to_py)?;
        Ok(PyCode { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (rows, q=2, name="custom"))]
    fn from_generator(rows: Vec<Vec<u32>>, q: u64, name: &str) -> PyResult<Self> {
        let field = codes::field_of_order(q).map_err(to_py)?;
        let inner = LinearCode::from_generator(Arc::new(field), rows, name).map_err(to_py)?;
        Ok(PyCode { inner })
    }

    #[staticmethod]
    fn read(path: PathBuf) -> PyResult<Self> {
        Ok(PyCode {
            inner: LinearCode::read(&path).map_err(to_py)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.spec().order()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn generator(&self) -> Vec<Vec<u32>> {
        self.inner.generator().to_vec()
    }

    fn codeword(&self, index: u64) -> PyResult<Vec<u32>> {
        self.inner.codeword_by_index(index).map_err(to_py)
    }

    fn contains(&self, word: Vec<u32>) -> bool {
        self.inner.contains(&word)
    }

    /// Returns (holds, witness support, witness coefficients).
    #[pyo3(signature = (threshold=5))]
    fn certify(&self, threshold: usize) -> PyResult<Certificate> {
        let cert = codes::dual_distance_at_least(&self.inner, threshold).map_err(to_py)?;
        let (support, coeffs) = match cert.witness {
            Some(w) => (Some(w.support), Some(w.coeffs)),
            None => (None, None),
        };
        Ok((cert.holds, support, coeffs))
    }

    fn dual_distance(&self) -> PyResult<usize> {
        codes::dual_distance_exact(&self.inner).map_err(to_py)
    }

    fn augmented(&self) -> PyResult<Self> {
        Ok(PyCode {
            inner: codes::augment_all_ones(&self.inner).map_err(to_py)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Code({:?}, n={}, k={}, q={})",
            self.inner.name(),
            self.inner.len(),
            self.inner.dimension(),
            self.inner.spec().order()
        )
    }
}

/// The centered matrix √(n/p)(G − I) for `p` sampled codewords.
#[pyfunction]
#[pyo3(signature = (code, p, mode="distinct", seed=harness::DEFAULT_SEED, trial=0))]
fn sample_matrix(
    code: &PyCode,
    p: usize,
    mode: &str,
    seed: u64,
    trial: u64,
) -> PyResult<Vec<Vec<Complex64>>> {
    let cw =
        matrix::sample_codewords(&code.inner, p, parse_mode(mode)?, seed, trial).map_err(to_py)?;
    Ok(matrix::centered_matrix(&cw).matrix.rows())
}

/// Sorted eigenvalues of the centered matrix for one trial.
#[pyfunction]
#[pyo3(signature = (code, p, mode="distinct", seed=harness::DEFAULT_SEED, trial=0))]
fn spectrum(code: &PyCode, p: usize, mode: &str, seed: u64, trial: u64) -> PyResult<Vec<f64>> {
    let cw =
        matrix::sample_codewords(&code.inner, p, parse_mode(mode)?, seed, trial).map_err(to_py)?;
    let m = matrix::centered_matrix(&cw);
    Ok(eigen::hermitian_eigenvalues(&m.matrix)
        .map_err(to_py)?
        .values)
}

/// Eigenvalues of a Hermitian matrix given as nested lists.
#[pyfunction]
fn eigenvalues(rows: Vec<Vec<Complex64>>) -> PyResult<Vec<f64>> {
    let m = ComplexMatrix::from_rows(&rows).map_err(to_py)?;
    Ok(eigen::hermitian_eigenvalues(&m).map_err(to_py)?.values)
}

#[pyfunction]
fn green_function(rows: Vec<Vec<Complex64>>, z: Complex64) -> PyResult<Vec<Vec<Complex64>>> {
    let m = ComplexMatrix::from_rows(&rows).map_err(to_py)?;
    Ok(eigen::green_function(&m, z).map_err(to_py)?.rows())
}

#[pyfunction]
fn sc_pdf(x: f64) -> f64 {
    semicircle::sc_pdf(x)
}

#[pyfunction]
fn sc_cdf(x: f64) -> f64 {
    semicircle::sc_cdf(x)
}

#[pyfunction]
fn sc_stieltjes(z: Complex64) -> PyResult<Complex64> {
    semicircle::sc_stieltjes(z).map_err(to_py)
}

#[pyfunction]
fn empirical_stieltjes(eigenvalues: Vec<f64>, z: Complex64) -> PyResult<Complex64> {
    stats::empirical_stieltjes(&esd(eigenvalues)?, z).map_err(to_py)
}

#[pyfunction]
fn delta_estimate(s: Complex64, z: Complex64) -> PyResult<Complex64> {
    stats::delta_estimate(s, z).map_err(to_py)
}

/// sup-interval and Kolmogorov–Smirnov distances to the semicircle.
#[pyfunction]
fn discrepancy<'py>(py: Python<'py>, eigenvalues: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    let d = stats::discrepancy(&esd(eigenvalues)?);
    let out = PyDict::new(py);
    out.set_item("sup_interval", d.sup_interval)?;
    out.set_item("ks", d.ks)?;
    out.set_item("ks_onesided_max", d.ks_onesided_max)?;
    out.set_item("ks_onesided_min", d.ks_onesided_min)?;
    Ok(out)
}

#[pyfunction]
fn moment_oracle<'py>(py: Python<'py>, code: &PyCode) -> PyResult<Bound<'py, PyDict>> {
    let r = stats::moment_oracle(&code.inner).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("codewords", r.codewords)?;
    out.set_item("max_pair_violation", r.max_pair_violation)?;
    out.set_item("max_quadruple_violation", r.max_quadruple_violation)?;
    out.set_item("quadruples_checked", r.quadruples_checked)?;
    out.set_item("witness", r.witness.map(|w| w.to_vec()))?;
    Ok(out)
}

/// Runs an experiment from a JSON config and returns summary.csv as a
/// string. Output files are written only when `output_dir` is given.
#[pyfunction]
#[pyo3(signature = (config_json, output_dir=None))]
fn run_experiment(
    py: Python<'_>,
    config_json: &str,
    output_dir: Option<PathBuf>,
) -> PyResult<String> {
    let cfg = ExperimentConfig::from_json(config_json).map_err(to_py)?;
    let result = py.detach(|| harness::run_experiment(&cfg)).map_err(to_py)?;
    if let Some(dir) = output_dir {
        result.write(&dir).map_err(to_py)?;
    }
    Ok(result.summary_csv())
}

/// Log-log fit from (n, p, sup_interval) triples.
#[pyfunction]
fn fit_rate<'py>(
    py: Python<'py>,
    samples: Vec<(usize, usize, f64)>,
) -> PyResult<Bound<'py, PyDict>> {
    let samples: Vec<RateSample> = samples
        .into_iter()
        .map(|(n, p, sup_interval)| RateSample { n, p, sup_interval })
        .collect();
    let fit = harness::fit_rate(&samples).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("beta", fit.beta)?;
    out.set_item("slope", fit.slope)?;
    out.set_item("intercept", fit.intercept)?;
    out.set_item("gamma", fit.gamma)?;
    out.set_item("beta_benchmark", fit.beta_benchmark)?;
    out.set_item(
        "medians",
        fit.per_n
            .iter()
            .map(|s| (s.n, s.median))
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (eigenvalues, title="spectrum", density=false))]
fn plot_svg(eigenvalues: Vec<f64>, title: &str, density: bool) -> PyResult<String> {
    if density {
        harness::density_svg(&eigenvalues, title)
    } else {
        harness::cdf_svg(&eigenvalues, title)
    }
    .map_err(to_py)
}

#[pymodule]
#[pyo3(name = "codespectra")]
fn codespectra_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(sample_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(green_function, m)?)?;
    m.add_function(wrap_pyfunction!(sc_pdf, m)?)?;
    m.add_function(wrap_pyfunction!(sc_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(sc_stieltjes, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_stieltjes, m)?)?;
    m.add_function(wrap_pyfunction!(delta_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(discrepancy, m)?)?;
    m.add_function(wrap_pyfunction!(moment_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(fit_rate, m)?)?;
    m.add_function(wrap_pyfunction!(plot_svg, m)?)?;
    m.add("DEFAULT_SEED", harness::DEFAULT_SEED)?;
    Ok(())
}
