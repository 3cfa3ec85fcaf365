//! Python bindings, importable as `vassiliev`.
//!
//! Rationals cross the boundary as `"p/q"` strings and reports as plain
//! dictionaries. Malformed input raises `ValueError`; size bounds and other
//! failures raise `RuntimeError`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use vassiliev::arrowmatch::{self, ArrowPattern};
use vassiliev::chordalg::{complete_diagram, solve_weight_systems, LinearRelation, WeightSystem};
use vassiliev::gaussdiag::{self, SingularGaussDiagram};
use vassiliev::invariants::{self, conway::conway_gauss, GaussFormula};
use vassiliev::knotcodes::{self, builtin_table, pd_to_gauss};
use vassiliev::moves::{self, SuiteOptions};
use vassiliev::rational;

fn py_err(e: vassiliev::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn from_json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn formula(name: &str) -> PyResult<GaussFormula> {
    invariants::formula_by_name(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown invariant {name:?}; expected v2, v4_1 or v4_2")))
}

/// A signed Gauss diagram.
#[pyclass(name = "GaussDiagram", module = "vassiliev", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGaussDiagram {
    inner: gaussdiag::GaussDiagram,
}

#[pymethods]
impl PyGaussDiagram {
    /// Parses a Gauss code such as `"O1+ U2+ O3+ U1+ O2+ U3+"`.
    #[staticmethod]
    fn from_gauss(code: &str) -> PyResult<Self> {
        knotcodes::parse_gauss(code).map(|inner| Self { inner }).map_err(py_err)
    }

    /// Parses a planar diagram code such as `"[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"`.
    #[staticmethod]
    fn from_pd(code: &str) -> PyResult<Self> {
        knotcodes::parse_pd(code).map(|pd| Self { inner: pd_to_gauss(&pd) }).map_err(py_err)
    }

    /// Parses a Dowker-Thistlethwaite code such as `"4 6 2"`.
    #[staticmethod]
    fn from_dt(code: &str) -> PyResult<Self> {
        knotcodes::parse_dt(code).map(|pd| Self { inner: pd_to_gauss(&pd) }).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn writhe(&self) -> i64 {
        self.inner.writhe()
    }

    fn is_realizable(&self) -> bool {
        self.inner.is_realizable()
    }

    fn canonical_form(&self) -> String {
        self.inner.canonical_form()
    }

    fn to_pd(&self) -> PyResult<String> {
        knotcodes::gauss_to_pd(&self.inner).map(|pd| pd.render()).map_err(py_err)
    }

    /// A random walk of `steps` Reidemeister moves, deterministic in `seed`.
    fn random_walk(&self, steps: usize, seed: u64) -> Self {
        Self { inner: moves::random_walk(&self.inner, steps, seed) }
    }

    /// Collapses the given crossings (0-based) into double points and
    /// evaluates the singular extension of the named invariant.
    fn eval_singular(&self, invariant: &str, crossings: Vec<usize>) -> PyResult<String> {
        if let Some(&bad) = crossings.iter().find(|&&c| c >= self.inner.n()) {
            return Err(PyValueError::new_err(format!("crossing {bad} out of range")));
        }
        let s = SingularGaussDiagram::collapse(&self.inner, &crossings);
        Ok(rational::to_string(&moves::eval_singular(&formula(invariant)?, &s)))
    }

    fn __str__(&self) -> String {
        knotcodes::render_gauss(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("GaussDiagram({:?})", knotcodes::render_gauss(&self.inner))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }
}

/// An arrow pattern in text form, e.g. `"| H1 T2 T1 H2"`.
#[pyclass(name = "ArrowPattern", module = "vassiliev", frozen)]
struct PyArrowPattern {
    inner: ArrowPattern,
}

#[pymethods]
impl PyArrowPattern {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        ArrowPattern::parse(text).map(|inner| Self { inner }).map_err(py_err)
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn based(&self) -> bool {
        self.inner.is_based()
    }

    /// Signed count of subdiagrams of `g` matching this pattern.
    fn pairing(&self, g: &PyGaussDiagram) -> i64 {
        arrowmatch::pairing(&self.inner, &g.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ArrowPattern({:?})", self.inner.to_string())
    }
}

/// Value of `invariant` (`v2`, `v4_1`, `v4_2`) on `g`, as `"p/q"`.
#[pyfunction]
fn evaluate(invariant: &str, g: &PyGaussDiagram) -> PyResult<String> {
    Ok(rational::to_string(&formula(invariant)?.evaluate(&g.inner)))
}

/// Conway polynomial coefficients of `g`, constant term first.
#[pyfunction]
fn conway(g: &PyGaussDiagram) -> PyResult<Vec<i64>> {
    let c = conway_gauss(&g.inner).map_err(py_err)?;
    c.coeffs()
        .iter()
        .map(|x| i64::try_from(x).map_err(|_| PyRuntimeError::new_err("coefficient exceeds 64 bits")))
        .collect()
}

/// Basis of weight systems of `degree`; `constrain="k4-zero"` adds
/// W(abcdabcd) = 0. Each weight system maps chord words to `"p/q"`.
#[pyfunction]
#[pyo3(signature = (degree, constrain=None))]
fn weight_basis<'py>(py: Python<'py>, degree: usize, constrain: Option<&str>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let extra = match constrain {
        None => Vec::new(),
        Some("k4-zero") if degree == 4 => vec![LinearRelation::vanishing(complete_diagram(4))],
        Some(other) => return Err(PyValueError::new_err(format!("unsupported constraint {other:?} for degree {degree}"))),
    };
    let basis = solve_weight_systems(degree, &extra).map_err(py_err)?;
    basis.iter().map(|w: &WeightSystem| from_json(py, &w.to_json()["values"])).collect()
}

/// Runs a verification suite (`reidemeister`, `degree`, `symbol`, `fit`)
/// over the built-in table and returns the report as a dictionary.
#[pyfunction]
#[pyo3(signature = (suite, invariant="v4_1", trials=100, seed=7, steps=20, k=None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    invariant: &str,
    trials: usize,
    seed: u64,
    steps: usize,
    k: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let f = formula(invariant)?;
    let table = builtin_table();
    let opts = SuiteOptions { trials, max_steps: steps, seed, fail_fast: false };
    let report = py.detach(|| -> PyResult<moves::VerificationReport> {
        Ok(match suite {
            "reidemeister" => moves::check_invariance(&f, &table, &opts),
            "degree" => moves::check_degree(&f, k.unwrap_or(f.order() + 1), &table, &opts),
            "symbol" => {
                let w = match invariant {
                    "v2" => solve_weight_systems(2, &[]).map_err(py_err)?.remove(0),
                    "v4_1" => invariants::v4_weight_basis().0,
                    _ => invariants::v4_weight_basis().1,
                };
                moves::check_symbol(&f, &w, &table, &opts)
            }
            "fit" => moves::check_fit(&f, &table, &opts),
            other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
        })
    })?;
    from_json(py, &serde_json::to_value(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))?)
}

/// The built-in knot table as a list of `(name, diagram, known values)`.
#[pyfunction]
fn knot_table<'py>(py: Python<'py>) -> PyResult<Vec<(String, PyGaussDiagram, Bound<'py, PyDict>)>> {
    builtin_table()
        .into_iter()
        .map(|e| {
            let known = PyDict::new(py);
            for (k, v) in &e.known_values {
                known.set_item(k, rational::to_string(v))?;
            }
            Ok((e.name, PyGaussDiagram { inner: pd_to_gauss(&e.pd) }, known))
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "vassiliev")]
pub fn vassiliev_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaussDiagram>()?;
    m.add_class::<PyArrowPattern>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(conway, m)?)?;
    m.add_function(wrap_pyfunction!(weight_basis, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(knot_table, m)?)?;
    Ok(())
}
