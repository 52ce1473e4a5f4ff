//! Python bindings: groups, catalog algebras, the codimension engine and
//! growth reports.

use std::sync::Arc;

use gstar_core::catalog::{build_named, catalog_set};
use gstar_core::cli::load_algebra;
use gstar_core::codim::Engine;
use gstar_core::growth::{self, GrowthReport, DEFAULT_CODIM_DEGREE, DEFAULT_IDEAL_DEGREE};
use gstar_core::{Error, FiniteAbelianGroup, GStarAlgebra, Polynomial, Q};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Capacity(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for gstar_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup(FiniteAbelianGroup);

#[pymethods]
impl PyGroup {
    /// `spec` is e.g. "Z2", "Z4" or "Z2xZ2".
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        FiniteAbelianGroup::parse_spec(spec).py().map(PyGroup)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn elements(&self) -> Vec<String> {
        self.0.elements().map(|a| self.0.name(a)).collect()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.0.spec())
    }
}

#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra(Arc<GStarAlgebra>);

#[pymethods]
impl PyAlgebra {
    /// A catalog name such as "Mrho[g]" or a path to a JSON algebra file.
    #[new]
    #[pyo3(signature = (name, group = "Z2"))]
    fn new(name: &str, group: &str) -> PyResult<Self> {
        let g = FiniteAbelianGroup::parse_spec(group).py()?;
        load_algebra(name, &g).py().map(|a| PyAlgebra(Arc::new(a)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        GStarAlgebra::from_json(&v).py().map(|a| PyAlgebra(Arc::new(a)))
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup(self.0.group().clone())
    }

    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    /// `None` when every axiom holds, otherwise a description of the failure.
    fn validate(&self) -> Option<String> {
        match self.0.validate() {
            gstar_core::Validation::Pass => None,
            gstar_core::Validation::Fail { axiom, witness } => Some(format!("{axiom} at {witness:?}")),
        }
    }

    fn radical_dim(&self) -> usize {
        self.0.radical().dim()
    }

    fn radical_index(&self) -> PyResult<usize> {
        self.0.nilpotency_index(&self.0.radical()).py()
    }

    /// Product of two basis elements, formatted in basis labels.
    fn multiply_basis(&self, i: usize, j: usize) -> PyResult<String> {
        if i >= self.0.dim() || j >= self.0.dim() {
            return Err(PyValueError::new_err("basis index out of range"));
        }
        let p = self.0.multiply(&self.0.basis_vector(i), &self.0.basis_vector(j)).py()?;
        Ok(self.0.format_element(&p))
    }

    fn direct_sum(&self, other: &PyAlgebra) -> PyResult<PyAlgebra> {
        GStarAlgebra::direct_sum(&[(*self.0).clone(), (*other.0).clone()]).py().map(|a| PyAlgebra(Arc::new(a)))
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={})", self.0.name(), self.0.dim())
    }
}

#[pyclass(name = "Engine", frozen)]
struct PyEngine(Arc<Engine>);

impl PyEngine {
    fn group(&self) -> &FiniteAbelianGroup {
        self.0.algebra().group()
    }
}

#[pymethods]
impl PyEngine {
    #[new]
    #[pyo3(signature = (algebra, cap = None))]
    fn new(algebra: &PyAlgebra, cap: Option<usize>) -> PyResult<Self> {
        let e = match cap {
            Some(c) => Engine::with_cap(&algebra.0, c),
            None => Engine::new(&algebra.0),
        };
        e.py().map(|e| PyEngine(Arc::new(e)))
    }

    fn codim(&self, py: Python<'_>, n: usize) -> PyResult<u64> {
        py.detach(|| self.0.total_codim(n)).py()
    }

    fn star_codim(&self, py: Python<'_>, n: usize) -> PyResult<u64> {
        py.detach(|| self.0.star_codim(n)).py()
    }

    fn graded_codim(&self, py: Python<'_>, n: usize) -> PyResult<u64> {
        py.detach(|| self.0.graded_codim(n)).py()
    }

    fn ordinary_codim(&self, py: Python<'_>, n: usize) -> PyResult<u64> {
        py.detach(|| self.0.ordinary_codim(n)).py()
    }

    /// `[c_1, ..., c_n]`.
    fn codim_sequence(&self, py: Python<'_>, n: usize) -> PyResult<Vec<u64>> {
        py.detach(|| self.0.codim_sequence(n)).py()
    }

    /// Returns `(holds, witness)`; the witness is a list of
    /// `(variable, element)` strings plus the value, or `None`.
    fn is_identity(&self, py: Python<'_>, poly: &str) -> PyResult<(bool, Option<(Vec<(String, String)>, String)>)> {
        let g = self.group().clone();
        let p = Polynomial::parse(poly, &g).py()?;
        let r = py.detach(|| self.0.is_identity(&p)).py()?;
        let a = self.0.algebra();
        let w = r.witness.map(|w| {
            let vars = w.assignment.iter().map(|(v, x)| (v.display(&g), a.format_element(x))).collect();
            (vars, a.format_element(&w.value))
        });
        Ok((r.holds, w))
    }

    /// Whether every identity of this algebra up to degree `n` holds on `other`.
    fn var_contains(&self, py: Python<'_>, other: &PyEngine, n: usize) -> PyResult<bool> {
        py.detach(|| self.0.var_contains(&other.0, n)).py().map(|r| r.holds)
    }

    fn t_equivalent(&self, py: Python<'_>, other: &PyEngine, n: usize) -> PyResult<bool> {
        py.detach(|| self.0.t_equivalent(&other.0, n)).py()
    }

    /// Whether `generators` generate the identities of degree at most `n`.
    fn ideal_check(&self, py: Python<'_>, generators: Vec<String>, n: usize) -> PyResult<bool> {
        let g = self.group().clone();
        let gens = generators.iter().map(|s| Polynomial::parse(s, &g)).collect::<gstar_core::Result<Vec<_>>>().py()?;
        py.detach(|| self.0.ideal_generated_check(&gens, n)).py().map(|r| r.equal())
    }

    /// Growth report as a JSON string.
    #[pyo3(signature = (set = "E", n_codim = DEFAULT_CODIM_DEGREE, n_ideal = DEFAULT_IDEAL_DEGREE))]
    fn growth(&self, py: Python<'_>, set: &str, n_codim: usize, n_ideal: usize) -> PyResult<String> {
        py.detach(|| GrowthReport::compute(&self.0, set, n_codim, n_ideal)).py().map(|r| r.to_json().to_string())
    }

    #[pyo3(signature = (n_ideal = DEFAULT_IDEAL_DEGREE, n_codim = DEFAULT_CODIM_DEGREE))]
    fn minimality(&self, py: Python<'_>, n_ideal: usize, n_codim: usize) -> PyResult<String> {
        py.detach(|| growth::minimality_report(&self.0, n_ideal, n_codim)).py().map(|m| m.to_string())
    }
}

/// Names of the algebras of a catalog set.
#[pyfunction]
#[pyo3(signature = (set, group = "Z2"))]
fn catalog(set: &str, group: &str) -> PyResult<Vec<String>> {
    let g = FiniteAbelianGroup::parse_spec(group).py()?;
    Ok(catalog_set(set, &g).py()?.iter().map(|a| a.name().to_string()).collect())
}

/// Codimension sequence of a catalog algebra, `c_1..c_n`.
#[pyfunction]
#[pyo3(signature = (name, n, group = "Z2"))]
fn codims(py: Python<'_>, name: &str, n: usize, group: &str) -> PyResult<Vec<u64>> {
    let g = FiniteAbelianGroup::parse_spec(group).py()?;
    let a = build_named(name, &g).py()?;
    py.detach(|| Engine::new(&a)?.codim_sequence(n)).py()
}

/// `(degree, leading, onset)` of an integer sequence; `degree` is `None`
/// when no polynomial tail is visible.
#[pyfunction]
fn profile(seq: Vec<i64>) -> PyResult<(Option<usize>, Option<String>, Option<usize>)> {
    let qs: Vec<Q> = seq.into_iter().map(Q::from_int).collect();
    let p = growth::poly_profile(&qs).py()?;
    Ok((p.degree, p.leading.map(|l| l.to_string()), p.onset))
}

#[pymodule]
fn gstar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyEngine>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(codims, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    Ok(())
}
