//! Python bindings: graphs, hypothesis checks, synthesis, certification and
//! the balancing primitive.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use cw::balance::{balanced_weights_with_rounds, verify_balanced, DEFAULT_PERTURB_ROUNDS};
use cw::certify::{certify_critical, check_conditions};
use cw::graph::{Edge, IndexedMultigraph, SimpleGraph, VertexId};
use cw::io::{parse_graph, CertificateDocument, GraphDocument};
use cw::synth::{synthesize_with_rounds, SynthError, SynthesisCertificate};
use cw::{families, validate};

create_exception!(crossweight, HypothesisError, PyValueError);
create_exception!(crossweight, CertificationError, PyException);

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn edge(pair: (VertexId, VertexId)) -> PyResult<Edge> {
    Edge::try_new(pair.0, pair.1).map_err(value_error)
}

#[pyclass(name = "Graph", module = "crossweight", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: SimpleGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> PyResult<Self> {
        Ok(PyGraph { inner: SimpleGraph::new(n, edges).map_err(value_error)? })
    }

    /// Parses a graph document; returns the graph and its designated edge.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<(Self, Option<(VertexId, VertexId)>)> {
        let doc = parse_graph(text).map_err(value_error)?;
        Ok((PyGraph { inner: doc.graph }, doc.uv.map(Edge::ends)))
    }

    #[pyo3(signature = (uv=None))]
    fn to_json(&self, uv: Option<(VertexId, VertexId)>) -> PyResult<String> {
        let uv = uv.map(edge).transpose()?;
        Ok(GraphDocument { uv, ..GraphDocument::new(self.inner.clone()) }.to_json())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.inner.edges().iter().map(|e| e.ends()).collect()
    }

    fn neighbors(&self, v: VertexId) -> PyResult<Vec<VertexId>> {
        if v >= self.inner.vertex_count() {
            return Err(value_error(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn with_edge(&self, a: VertexId, b: VertexId) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.with_edge(edge((a, b))?).map_err(value_error)? })
    }

    fn relabel(&self, perm: Vec<VertexId>) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.relabel(&perm).map_err(value_error)? })
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

#[pyfunction]
fn dodecahedron() -> PyGraph {
    PyGraph { inner: families::dodecahedron() }
}

#[pyfunction]
fn cube() -> PyGraph {
    PyGraph { inner: families::cube() }
}

#[pyfunction]
fn prism(k: usize) -> PyGraph {
    PyGraph { inner: families::prism(k) }
}

#[pyfunction]
fn complete(n: usize) -> PyGraph {
    PyGraph { inner: families::complete(n) }
}

#[pyfunction]
fn generalized_petersen(n: usize, k: usize) -> PyGraph {
    PyGraph { inner: families::generalized_petersen(n, k) }
}

/// Vertices at maximum distance from `v`.
#[pyfunction]
fn farthest_from(g: &PyGraph, v: VertexId) -> Vec<VertexId> {
    families::farthest_from(&g.inner, v)
}

#[pyclass(name = "HypothesisReport", module = "crossweight", frozen, get_all)]
struct PyHypothesisReport {
    accepted: bool,
    g_minus_uv_cubic: bool,
    g_minus_uv_3connected: bool,
    g_minus_uv_planar: bool,
    g_nonplanar: bool,
    guv_internally_3connected: bool,
    neighbor_distinctness: bool,
    failures: Vec<String>,
}

#[pymethods]
impl PyHypothesisReport {
    fn __repr__(&self) -> String {
        format!("HypothesisReport(accepted={}, failures={:?})", self.accepted, self.failures)
    }
}

#[pyfunction]
fn validate_hypotheses(g: &PyGraph, u: VertexId, v: VertexId) -> PyResult<PyHypothesisReport> {
    let r = validate::validate_hypotheses(&g.inner, edge((u, v))?).map_err(value_error)?;
    Ok(PyHypothesisReport {
        accepted: r.accepted(),
        g_minus_uv_cubic: r.g_minus_uv_cubic,
        g_minus_uv_3connected: r.g_minus_uv_3connected,
        g_minus_uv_planar: r.g_minus_uv_planar,
        g_nonplanar: r.g_nonplanar,
        guv_internally_3connected: r.guv_internally_3connected,
        neighbor_distinctness: r.neighbor_distinctness,
        failures: r.failures.iter().map(ToString::to_string).collect(),
    })
}

#[pyclass(name = "CriticalityReport", module = "crossweight", frozen, get_all)]
struct PyCriticalityReport {
    cr_value: BigUint,
    upper_bound_count: BigUint,
    lower_bound_holds: bool,
    /// `(edge, crossings after decrementing it)` for every edge.
    decremented: Vec<((VertexId, VertexId), BigUint)>,
    all_strict: bool,
}

#[pymethods]
impl PyCriticalityReport {
    fn __repr__(&self) -> String {
        format!("CriticalityReport(cr_value={}, all_strict={})", self.cr_value, self.all_strict)
    }
}

#[pyclass(name = "Certificate", module = "crossweight", frozen)]
struct PyCertificate {
    inner: SynthesisCertificate,
}

#[pymethods]
impl PyCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = CertificateDocument::parse(text).map_err(value_error)?;
        Ok(PyCertificate { inner: doc.certificate().map_err(value_error)? })
    }

    /// Full certificate document including both reports.
    fn to_json(&self) -> PyResult<String> {
        Ok(CertificateDocument::new(&self.inner).map_err(value_error)?.to_json())
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph { inner: self.inner.graph.clone() }
    }

    #[getter]
    fn uv(&self) -> (VertexId, VertexId) {
        (self.inner.u, self.inner.v)
    }

    #[getter]
    fn t(&self) -> BigUint {
        self.inner.t().clone()
    }

    #[getter]
    fn c(&self) -> BigUint {
        self.inner.c.clone()
    }

    #[getter]
    fn r(&self) -> [BigUint; 3] {
        self.inner.r.clone()
    }

    #[getter]
    fn s(&self) -> [BigUint; 3] {
        self.inner.s.clone()
    }

    #[getter]
    fn omega(&self) -> BTreeMap<(VertexId, VertexId), BigUint> {
        self.inner.omega.iter().map(|(e, w)| (e.ends(), w.clone())).collect()
    }

    /// Items among 1..=7 that fail; empty when all hold.
    fn check_conditions(&self) -> PyResult<Vec<u32>> {
        let report = check_conditions(&self.inner).map_err(value_error)?;
        Ok(report.failing_items().into_iter().map(u32::from).collect())
    }

    fn certify(&self) -> PyResult<PyCriticalityReport> {
        let r = certify_critical(&self.inner).map_err(|e| CertificationError::new_err(e.to_string()))?;
        Ok(PyCriticalityReport {
            all_strict: r.all_strict(),
            lower_bound_holds: r.lower_bound.holds(),
            decremented: r.witnesses.iter().map(|w| (w.edge.ends(), w.decremented.clone())).collect(),
            cr_value: r.cr_value,
            upper_bound_count: r.upper_bound_count,
        })
    }

    fn __repr__(&self) -> String {
        format!("Certificate(uv=({}, {}), t={}, c={})", self.inner.u, self.inner.v, self.inner.t(), self.inner.c)
    }
}

#[pyfunction]
#[pyo3(signature = (g, u, v, max_perturb_rounds=DEFAULT_PERTURB_ROUNDS))]
fn synthesize(g: &PyGraph, u: VertexId, v: VertexId, max_perturb_rounds: usize) -> PyResult<PyCertificate> {
    let inner = synthesize_with_rounds(&g.inner, edge((u, v))?, max_perturb_rounds).map_err(|e| match e {
        SynthError::Hypotheses(_) => HypothesisError::new_err(e.to_string()),
        other => CertificationError::new_err(other.to_string()),
    })?;
    Ok(PyCertificate { inner })
}

/// Balanced weights for a multigraph given by its edge list; returns the
/// weights (one per listed edge) and the `s`–`t` distance.
#[pyfunction]
#[pyo3(signature = (n, edges, s, t, max_perturb_rounds=DEFAULT_PERTURB_ROUNDS))]
fn balanced_weights(
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    s: VertexId,
    t: VertexId,
    max_perturb_rounds: usize,
) -> PyResult<(Vec<BigUint>, BigUint)> {
    let g = IndexedMultigraph::new(n, edges).map_err(value_error)?;
    let cert = balanced_weights_with_rounds(&g, s, t, max_perturb_rounds).map_err(value_error)?;
    Ok((cert.weights, cert.distance))
}

/// Indices of edges on no shortest `s`–`t` path.
#[pyfunction]
fn failing_edges(
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    weights: Vec<BigUint>,
    s: VertexId,
    t: VertexId,
) -> PyResult<Vec<usize>> {
    let g = IndexedMultigraph::new(n, edges).map_err(value_error)?;
    if weights.len() != g.edge_count() || s >= n || t >= n {
        return Err(value_error("weights must match edges and terminals must be vertices"));
    }
    Ok(verify_balanced(&g, &weights, s, t).failing_edges)
}

#[pymodule]
#[pyo3(name = "crossweight")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyHypothesisReport>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyCriticalityReport>()?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add("CertificationError", m.py().get_type::<CertificationError>())?;
    m.add_function(wrap_pyfunction!(dodecahedron, m)?)?;
    m.add_function(wrap_pyfunction!(cube, m)?)?;
    m.add_function(wrap_pyfunction!(prism, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_petersen, m)?)?;
    m.add_function(wrap_pyfunction!(farthest_from, m)?)?;
    m.add_function(wrap_pyfunction!(validate_hypotheses, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(balanced_weights, m)?)?;
    m.add_function(wrap_pyfunction!(failing_edges, m)?)?;
    Ok(())
}
