use std::path::PathBuf;

use homcalc::algebra::{find_symmetric_structure, validate, SymmetricStructure};
use homcalc::bv::bv_report;
use homcalc::cochain::{bracket, cup, delta_pi};
use homcalc::fixtures::{self, Fixture};
use homcalc::homology::{Engine, EngineConfig};
use homcalc::io::AlgebraSpec;
use homcalc::verifier::{self, Suite, VerifyConfig};
use homcalc::{Coefficients, Scalar, Vector};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

fn err(e: homcalc::Error) -> PyErr {
    match e {
        homcalc::Error::Parse(_) | homcalc::Error::Io(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(format!("{}: {e}", e.kind())),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn coefficients(name: &str) -> PyResult<Coefficients> {
    match name {
        "algebra" => Ok(Coefficients::Algebra),
        "dual" => Ok(Coefficients::Dual),
        other => Err(PyValueError::new_err(format!("unknown coefficients {other:?}"))),
    }
}

/// A finite-dimensional hom-associative algebra over the rationals.
#[pyclass(name = "Algebra", module = "homcalc", frozen)]
struct PyAlgebra {
    fixture: Fixture,
}

impl PyAlgebra {
    fn new(spec: AlgebraSpec) -> PyResult<Self> {
        Ok(PyAlgebra {
            fixture: Fixture::from_spec(spec).map_err(err)?,
        })
    }

    fn check(&self, f: &PyCochain) -> PyResult<()> {
        if f.inner.dim() != self.fixture.algebra.dim() {
            return Err(PyValueError::new_err("cochain belongs to an algebra of another dimension"));
        }
        Ok(())
    }
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        PyAlgebra::new(AlgebraSpec::from_json(text).map_err(err)?)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        PyAlgebra::new(AlgebraSpec::load(&path).map_err(err)?)
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let fixture = fixtures::get(name).ok_or_else(|| PyValueError::new_err(format!("no fixture named {name:?}")))?;
        Ok(PyAlgebra { fixture })
    }

    fn to_json(&self) -> String {
        self.fixture.spec.to_json()
    }

    #[getter]
    fn name(&self) -> &str {
        self.fixture.algebra.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.fixture.algebra.dim()
    }

    #[getter]
    fn is_regular(&self) -> bool {
        self.fixture.algebra.is_regular()
    }

    #[getter]
    fn is_unital(&self) -> bool {
        self.fixture.algebra.is_unital()
    }

    #[getter]
    fn has_theta(&self) -> bool {
        self.fixture.theta.is_some()
    }

    /// Structural checks as a dict; `result["passed"]` is the verdict.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = validate(&self.fixture.algebra);
        let out = serde_json::json!({ "passed": report.passed(), "checks": report });
        to_py(py, &out)
    }

    /// Dimensions of `HH^p` for `p = 0..=max_degree`; `None` where the
    /// degree needs an invertible twist the algebra lacks.
    #[pyo3(signature = (max_degree = 3, coefficients = "algebra"))]
    fn cohomology_dims(&self, max_degree: usize, coefficients: &str) -> PyResult<Vec<Option<usize>>> {
        let coeffs = self::coefficients(coefficients)?;
        let engine = Engine::new(
            &self.fixture.algebra,
            EngineConfig {
                cochain_cap: max_degree,
                ..EngineConfig::default()
            },
        );
        (0..=max_degree)
            .map(|p| match engine.cohomology(p, coeffs) {
                Ok(s) => Ok(Some(s.dim())),
                Err(homcalc::Error::Regularity(_)) => Ok(None),
                Err(e) => Err(err(e)),
            })
            .collect()
    }

    #[pyo3(signature = (max_degree = 3))]
    fn homology_dims(&self, max_degree: usize) -> PyResult<Vec<usize>> {
        let engine = Engine::new(
            &self.fixture.algebra,
            EngineConfig {
                chain_cap: max_degree,
                ..EngineConfig::default()
            },
        );
        (0..=max_degree)
            .map(|n| engine.homology(n).map(|s| s.dim()).map_err(err))
            .collect()
    }

    /// Runs the named suites (all of them by default) and returns their
    /// results as a list of dicts.
    #[pyo3(signature = (suites = None, max_degree = 3, trials = 100, seed = 0))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        suites: Option<Vec<String>>,
        max_degree: usize,
        trials: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let suites: Vec<Suite> = match suites {
            None => Suite::ALL.to_vec(),
            Some(names) => names.iter().map(|s| s.parse().map_err(err)).collect::<PyResult<_>>()?,
        };
        let config = VerifyConfig {
            cochain_cap: max_degree,
            chain_cap: max_degree + 1,
            trials,
            seed,
            ..VerifyConfig::default()
        };
        let alg = &self.fixture.algebra;
        let theta = self.fixture.theta.as_ref();
        let results = py.detach(|| verifier::run_suites(&suites, alg, theta, config));
        to_py(py, &results)
    }

    /// Symmetric structure found by search, as rows of rational strings.
    fn find_theta(&self) -> PyResult<Option<Vec<Vec<String>>>> {
        let found = find_symmetric_structure(&self.fixture.algebra).map_err(err)?;
        Ok(found.map(|t: SymmetricStructure| t.theta.to_string_rows()))
    }

    #[pyo3(signature = (max_degree = 3))]
    fn bv<'py>(&self, py: Python<'py>, max_degree: usize) -> PyResult<Bound<'py, PyAny>> {
        let engine = Engine::new(
            &self.fixture.algebra,
            EngineConfig {
                cochain_cap: max_degree,
                chain_cap: max_degree + 1,
                ..EngineConfig::default()
            },
        );
        let report = bv_report(&engine, self.fixture.theta.as_ref()).map_err(err)?;
        to_py(py, &report)
    }

    /// A reproducible random equivariant `p`-cochain.
    #[pyo3(signature = (p, seed = 0))]
    fn random_cochain(&self, p: usize, seed: u64) -> PyResult<PyCochain> {
        let inner = verifier::random_cochain(&self.fixture.algebra, p, seed).map_err(err)?;
        Ok(PyCochain { inner })
    }

    fn cochain(&self, p: usize, coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<PyCochain> {
        let values = coeffs
            .iter()
            .map(|c| {
                let s = c.str()?.to_string();
                s.parse::<Scalar>().map_err(err)
            })
            .collect::<PyResult<Vector>>()?;
        let inner = homcalc::Cochain::from_coeffs(self.dim(), p, Coefficients::Algebra, values).map_err(err)?;
        Ok(PyCochain { inner })
    }

    fn cup(&self, f: &PyCochain, g: &PyCochain) -> PyResult<PyCochain> {
        self.check(f)?;
        self.check(g)?;
        let inner = cup(&self.fixture.algebra, &f.inner, &g.inner).map_err(err)?;
        Ok(PyCochain { inner })
    }

    fn bracket(&self, f: &PyCochain, g: &PyCochain) -> PyResult<PyCochain> {
        self.check(f)?;
        self.check(g)?;
        let inner = bracket(&self.fixture.algebra, &f.inner, &g.inner).map_err(err)?;
        Ok(PyCochain { inner })
    }

    fn coboundary(&self, f: &PyCochain) -> PyResult<PyCochain> {
        self.check(f)?;
        let inner = delta_pi(&self.fixture.algebra, &f.inner).map_err(err)?;
        Ok(PyCochain { inner })
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={})", self.name(), self.dim())
    }
}

/// A Hochschild cochain with values in the algebra.
#[pyclass(name = "Cochain", module = "homcalc", frozen)]
struct PyCochain {
    inner: homcalc::Cochain,
}

#[pymethods]
impl PyCochain {
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Coefficients as exact rational strings.
    fn coeffs(&self) -> Vec<String> {
        self.inner.coeffs().to_strings()
    }

    fn is_zero(&self) -> bool {
        self.inner.coeffs().is_zero()
    }

    fn __add__(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &PyCochain) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Cochain(degree={}, dim={})", self.degree(), self.dim())
    }
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::names().collect()
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

#[pymodule]
pub fn homcalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyCochain>()?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    Ok(())
}
