//! Python bindings: group elements, algebra checks, Casimir values and the
//! verification suites. Structured data crosses the boundary as JSON strings.

use hamrep::cli::{self, demo, NRange, Overrides, Suite, SuiteConfig};
use hamrep::groups::{inverse, product, to_matrix, GroupParams};
use hamrep::liealg::{builtin_algebra, invariant_count, jacobi_check, Family};
use hamrep::uir::{casimir_eigenvalue, verify_homomorphism, RepLabels};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(name: &str) -> PyResult<Family> {
    name.parse().map_err(err)
}

fn labels(json: Option<&str>) -> PyResult<RepLabels> {
    match json {
        Some(s) => serde_json::from_str(s).map_err(err),
        None => Ok(RepLabels::default()),
    }
}

/// Element of the quantum Hamilton group; `*` is the group product.
#[pyclass(name = "GroupElement", module = "hamrep_py", from_py_object)]
#[derive(Clone)]
struct PyGroupElement(GroupParams);

#[pymethods]
impl PyGroupElement {
    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyGroupElement(GroupParams::identity(n))
    }

    #[staticmethod]
    fn random(n: usize, seed: u64) -> Self {
        PyGroupElement(GroupParams::random(n, &mut ChaCha8Rng::seed_from_u64(seed)))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        GroupParams::from_json(s).map(PyGroupElement).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn inverse(&self) -> Self {
        PyGroupElement(inverse(&self.0))
    }

    /// Row-major matrix realization.
    fn matrix(&self) -> Vec<Vec<f64>> {
        let m = to_matrix(&self.0);
        m.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    fn max_deviation(&self, other: &Self) -> f64 {
        self.0.max_deviation(&other.0)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        product(&self.0, &other.0).map(PyGroupElement).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("GroupElement(n={})", self.0.n())
    }
}

/// Basis labels of a builtin algebra.
#[pyfunction]
fn algebra_basis(name: &str, n: usize) -> PyResult<Vec<String>> {
    Ok(builtin_algebra(family(name)?, n).map_err(err)?.basis)
}

#[pyfunction]
fn jacobi(name: &str, n: usize) -> PyResult<bool> {
    let alg = builtin_algebra(family(name)?, n).map_err(err)?;
    Ok(jacobi_check(&alg).pass)
}

/// Number of independent Casimir invariants (dimension minus generic rank).
#[pyfunction]
#[pyo3(signature = (name, n, trials = 8, seed = 42))]
fn casimir_count(name: &str, n: usize, trials: usize, seed: u64) -> PyResult<usize> {
    let alg = builtin_algebra(family(name)?, n).map_err(err)?;
    Ok(invariant_count(&alg, trials, seed))
}

/// `(value, closed_form, residual)` of the k-th Casimir on the representation.
#[pyfunction]
#[pyo3(signature = (name, k, labels_json = None, n = 3))]
fn casimir(name: &str, k: usize, labels_json: Option<&str>, n: usize) -> PyResult<(f64, f64, f64)> {
    let v = casimir_eigenvalue(family(name)?, n, k, &labels(labels_json)?).map_err(err)?;
    Ok((v.value, v.closed_form, v.residual))
}

/// JSON homomorphism report.
#[pyfunction]
#[pyo3(signature = (name, labels_json = None, n = 3, trials = 50, seed = 42))]
fn homomorphism(name: &str, labels_json: Option<&str>, n: usize, trials: usize, seed: u64) -> PyResult<String> {
    let r = verify_homomorphism(family(name)?, n, &labels(labels_json)?, trials, seed).map_err(err)?;
    serde_json::to_string(&r).map_err(err)
}

/// Runs verification suites and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (suites = Vec::new(), n = "3", trials = 200, seed = 42))]
fn verify(suites: Vec<String>, n: &str, trials: usize, seed: u64) -> PyResult<String> {
    let suites = suites
        .iter()
        .map(|s| serde_json::from_value::<Suite>(serde_json::Value::String(s.clone())).map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    let n: NRange = n.parse().map_err(err)?;
    let overrides = Overrides { suites, n: Some(n), trials: Some(trials), seed: Some(seed), ..Default::default() };
    let config = SuiteConfig::resolve(None, overrides).map_err(err)?;
    Ok(cli::verify(&config).to_json())
}

/// CSV of a transformed wavepacket, as produced by `hamrep demo`.
#[pyfunction]
fn demo_csv(grid: &str, transform_json: &str) -> PyResult<String> {
    let grid: demo::Grid = grid.parse().map_err(err)?;
    let transform = demo::Transform::from_json(transform_json).map_err(err)?;
    demo::demo_csv(&grid, &transform).map_err(err)
}

#[pymodule]
fn hamrep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroupElement>()?;
    m.add_function(wrap_pyfunction!(algebra_basis, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_count, m)?)?;
    m.add_function(wrap_pyfunction!(casimir, m)?)?;
    m.add_function(wrap_pyfunction!(homomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(demo_csv, m)?)?;
    Ok(())
}
