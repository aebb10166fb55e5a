//! Python bindings: `Poly` and `Graph` classes plus the engine, family,
//! oracle, zero and asymptotic entry points. Reports come back as plain
//! dicts and lists.

use std::collections::HashMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;
use wspoly::engine::{self, EngineOptions};
use wspoly::identities::{run_suite, Suite};
use wspoly::{asymptotics, families, make_family, strips, zeros, FamilyKind, MultiPoly, Var};

create_exception!(wspoly, WspolyError, PyException);

fn err(e: wspoly::Error) -> PyErr {
    WspolyError::new_err(e.to_string())
}

fn parse_var(name: &str) -> PyResult<Var> {
    let mut chars = name.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Var::from_symbol(c).filter(|v| Var::ALL.contains(v)),
        _ => None,
    }
    .ok_or_else(|| PyValueError::new_err(format!("unknown variable `{name}`; expected q, s, v or w")))
}

fn parse_kind(kind: &str) -> PyResult<FamilyKind> {
    kind.parse().map_err(err)
}

fn to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &value)
}

/// Exact integer polynomial in q, s, v, w.
#[pyclass(name = "Poly", module = "wspoly", frozen, eq, from_py_object)]
#[derive(Debug, Clone, PartialEq)]
struct PyPoly {
    inner: MultiPoly,
}

impl From<MultiPoly> for PyPoly {
    fn from(inner: MultiPoly) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyPoly {
    /// Parse text such as `"s(s+v)w^2 + 2s(q-s)w"`; `t` stands for s(w-1).
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse::<MultiPoly>().map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        MultiPoly::from_json(&value).map(Self::from).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn to_latex(&self) -> String {
        self.inner.to_latex()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        (self.inner.clone() + other.inner.clone()).into()
    }

    fn __sub__(&self, other: &PyPoly) -> PyPoly {
        (self.inner.clone() - other.inner.clone()).into()
    }

    fn __mul__(&self, other: &PyPoly) -> PyPoly {
        (self.inner.clone() * other.inner.clone()).into()
    }

    fn __pow__(&self, k: u32, _modulo: Option<Py<PyAny>>) -> PyPoly {
        self.inner.pow(k).into()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn degree(&self, var: &str) -> PyResult<u32> {
        Ok(self.inner.degree(parse_var(var)?))
    }

    /// `[((a, b, c, d), coeff), ...]` for coeff·q^a s^b v^c w^d.
    fn terms(&self) -> Vec<((u32, u32, u32, u32), BigInt)> {
        self.inner.terms().map(|(e, c)| ((e[0], e[1], e[2], e[3]), c.clone())).collect()
    }

    /// Substitute an integer or another polynomial for one variable.
    fn subs(&self, var: &str, value: &Bound<'_, PyAny>) -> PyResult<PyPoly> {
        let var = parse_var(var)?;
        if let Ok(k) = value.extract::<i64>() {
            return Ok(self.inner.subs_int(var, k).into());
        }
        let p: PyRef<'_, PyPoly> = value.extract()?;
        Ok(self.inner.subs_poly(var, &p.inner).into())
    }

    #[pyo3(signature = (q, s, v = -1.0, w = 1.0))]
    fn eval(&self, q: f64, s: f64, v: f64, w: f64) -> f64 {
        self.inner.eval_real(q, s, v, w)
    }

    /// Complex roots in `var` with the remaining variables fixed, e.g.
    /// `p.zeros("q", {"s": 1, "w": 0.5})`.
    #[pyo3(signature = (var, fixed = None))]
    fn zeros(&self, var: &str, fixed: Option<HashMap<String, f64>>) -> PyResult<Vec<(f64, f64, f64)>> {
        let var = parse_var(var)?;
        let fixed = fixed
            .unwrap_or_default()
            .into_iter()
            .map(|(k, x)| Ok((parse_var(&k)?, x)))
            .collect::<PyResult<Vec<_>>>()?;
        let slice = zeros::zeros(&self.inner, var, &fixed, zeros::DEFAULT_TOLERANCE).map_err(err)?;
        Ok(slice.roots.iter().map(|r| (r.re, r.im, r.residual)).collect())
    }
}

/// Undirected multigraph; loops and parallel edges allowed.
#[pyclass(name = "Graph", module = "wspoly", frozen, from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: wspoly::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        wspoly::Graph::new(n, edges).map(|inner| Self { inner }).map_err(err)
    }

    /// Named family: null, line, star, complete, circuit or c4d.
    #[staticmethod]
    fn family(kind: &str, n: usize) -> PyResult<Self> {
        make_family(parse_kind(kind)?, n).map(|inner| Self { inner }).map_err(err)
    }

    /// JSON or `n <count>` edge-list text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        wspoly::Graph::parse_any(text).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn digest(&self) -> String {
        self.inner.digest()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.inner.n(), self.inner.edges())
    }
}

fn options(workers: usize) -> EngineOptions {
    EngineOptions::from_env().with_workers(workers)
}

/// Z(G, q, s, v, w) by spanning-subgraph enumeration.
#[pyfunction]
#[pyo3(signature = (graph, workers = 0))]
fn z(py: Python<'_>, graph: &PyGraph, workers: usize) -> PyResult<PyPoly> {
    let g = graph.inner.clone();
    py.detach(move || engine::z_subgraph_sum_with(&g, &options(workers))).map(PyPoly::from).map_err(err)
}

/// Ph(G, q, s, w), the v = -1 specialization.
#[pyfunction]
#[pyo3(signature = (graph, workers = 0))]
fn ph(py: Python<'_>, graph: &PyGraph, workers: usize) -> PyResult<PyPoly> {
    let g = graph.inner.clone();
    py.detach(move || engine::ph_with(&g, &options(workers))).map(PyPoly::from).map_err(err)
}

#[pyfunction]
fn family_z(kind: &str, n: usize) -> PyResult<PyPoly> {
    families::family_z(parse_kind(kind)?, n).map(PyPoly::from).map_err(err)
}

#[pyfunction]
fn family_ph(kind: &str, n: usize) -> PyResult<PyPoly> {
    families::family_ph(parse_kind(kind)?, n).map(PyPoly::from).map_err(err)
}

/// Brute-force coloring sum at integer q, s; a polynomial in v and w.
#[pyfunction]
fn oracle_z(graph: &PyGraph, q: u32, s: u32) -> PyResult<PyPoly> {
    engine::oracle_z(&graph.inner, q, s).map(PyPoly::from).map_err(err)
}

#[pyfunction]
fn oracle_ph(graph: &PyGraph, q: u32, s: u32) -> PyResult<PyPoly> {
    engine::oracle_ph(&graph.inner, q, s).map(PyPoly::from).map_err(err)
}

/// Run an identity suite over the built-in fixtures (or the given graphs).
#[pyfunction]
#[pyo3(signature = (suite = "all", graphs = None, seed = 0))]
fn check<'py>(
    py: Python<'py>,
    suite: &str,
    graphs: Option<Vec<(String, PyGraph)>>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let graphs: Vec<(String, wspoly::Graph)> =
        graphs.unwrap_or_default().into_iter().map(|(n, g)| (n, g.inner)).collect();
    let ledger = py.detach(move || run_suite(suite, &graphs, seed)).map_err(err)?;
    report(py, &ledger)
}

#[pyfunction]
fn strip_tables<'py>(py: Python<'py>, ly_max: usize) -> PyResult<Bound<'py, PyAny>> {
    let tables = strips::build_counts(ly_max).map_err(err)?;
    to_py(py, &Value::Array(tables.iter().map(|t| t.to_json()).collect()))
}

/// Dominant-eigenvalue report for the circuit family.
#[pyfunction]
fn phi<'py>(py: Python<'py>, q: f64, s: f64, w: f64) -> PyResult<Bound<'py, PyAny>> {
    report(py, &asymptotics::phi_circuit(q, s, w))
}

#[pyfunction]
fn qc<'py>(py: Python<'py>, s: u32, w: f64) -> PyResult<Bound<'py, PyAny>> {
    report(py, &asymptotics::qc_circuit(s, w))
}

#[pymodule(name = "wspoly")]
fn wspoly_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyGraph>()?;
    m.add("WspolyError", m.py().get_type::<WspolyError>())?;
    m.add_function(wrap_pyfunction!(z, m)?)?;
    m.add_function(wrap_pyfunction!(ph, m)?)?;
    m.add_function(wrap_pyfunction!(family_z, m)?)?;
    m.add_function(wrap_pyfunction!(family_ph, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_z, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_ph, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(strip_tables, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(qc, m)?)?;
    Ok(())
}
