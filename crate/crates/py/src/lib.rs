//! Python bindings: `import pcg_py`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pcg::bits::AdjMatrix;
use pcg::cg::{build_graph, build_reduced, collapse_twins, CommGraph};
use pcg::classify::{analyze as analyze_spec, run_suite, AnalyzeOptions};
use pcg::cli::cert::{encode_element, Certificate};
use pcg::named::{build_str, GroupSpec};
use pcg::perf::{self, BergeOptions, Outcome, DEFAULT_BUDGET};

fn err(e: pcg::error::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite group built from a spec string such as `"alt:6"` or `"sl:3:4"`.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: pcg::grp::Group,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGroup { inner: build_str(spec).map_err(err)? })
    }
    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }
    #[getter]
    fn center_size(&self) -> usize {
        self.inner.center().len()
    }
    fn is_quasisimple(&self) -> bool {
        self.inner.is_quasisimple()
    }
    fn is_ac_group(&self) -> bool {
        self.inner.is_ac_group()
    }
    fn element(&self, i: u32) -> PyResult<String> {
        if (i as usize) < self.inner.order() {
            Ok(encode_element(self.inner.element(i)))
        } else {
            Err(PyValueError::new_err("element index out of range"))
        }
    }
    #[pyo3(signature = (include_center=false, reduced=false, collapsed=false))]
    fn commuting_graph(&self, include_center: bool, reduced: bool, collapsed: bool) -> PyResult<PyCommGraph> {
        let g = &self.inner;
        let base = if reduced { build_reduced(g) } else { build_graph(g, include_center) }.map_err(err)?;
        Ok(PyCommGraph { inner: if collapsed { collapse_twins(&base) } else { base } })
    }
    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.name(), self.inner.order())
    }
}

#[pyclass(name = "CommGraph", frozen)]
struct PyCommGraph {
    inner: CommGraph,
}

#[pymethods]
impl PyCommGraph {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.adj().edges()
    }
    fn degree(&self, v: usize) -> PyResult<usize> {
        if v < self.inner.n() {
            Ok(self.inner.degree(v))
        } else {
            Err(PyValueError::new_err("vertex out of range"))
        }
    }
    /// Group elements of the vertices, in the certificate encoding.
    fn elements(&self) -> Vec<String> {
        self.inner.vertex_elements().map(|e| e.iter().map(encode_element).collect()).unwrap_or_default()
    }
    fn class_sizes(&self) -> Vec<usize> {
        self.inner.report.class_sizes.clone()
    }
    fn to_dimacs(&self) -> String {
        self.inner.to_dimacs()
    }
    #[pyo3(signature = (budget=DEFAULT_BUDGET, max_len=None))]
    fn is_berge(&self, budget: u64, max_len: Option<usize>) -> (Option<bool>, Option<Vec<usize>>) {
        let opts = BergeOptions { budget, max_len, labels: self.inner.flag_labels(), simplify: true };
        outcome(perf::is_berge(self.inner.adj(), &opts).outcome)
    }
}

fn outcome(o: Outcome) -> (Option<bool>, Option<Vec<usize>>) {
    match o {
        Outcome::Berge(_) => (Some(true), None),
        Outcome::NotBerge(w) => (Some(false), Some(w.vertices)),
        Outcome::Unknown { .. } => (None, None),
    }
}

/// Berge test of a graph given as a vertex count and an edge list.
/// Returns `(verdict, witness)` with verdict `None` when the budget ran out.
#[pyfunction]
#[pyo3(signature = (n, edges, budget=DEFAULT_BUDGET))]
fn is_berge(n: usize, edges: Vec<(usize, usize)>, budget: u64) -> PyResult<(Option<bool>, Option<Vec<usize>>)> {
    if edges.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
        return Err(PyValueError::new_err("edge endpoint out of range or loop"));
    }
    let adj = AdjMatrix::from_edges(n, &edges);
    Ok(outcome(perf::is_berge(&adj, &BergeOptions { budget, ..Default::default() }).outcome))
}

/// Full analysis of a group spec; returns a dict.
#[pyfunction]
#[pyo3(signature = (spec, include_center=false, budget=DEFAULT_BUDGET, max_len=None))]
fn analyze<'py>(
    py: Python<'py>,
    spec: &str,
    include_center: bool,
    budget: u64,
    max_len: Option<usize>,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let s = GroupSpec::parse(spec).map_err(err)?;
    let opts = AnalyzeOptions { include_center, budget, max_len, ..Default::default() };
    let r = analyze_spec(&s, &opts, None).map_err(err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("spec", &r.spec)?;
    d.set_item("order", r.order)?;
    d.set_item("center", r.center)?;
    d.set_item("quasisimple", r.quasisimple)?;
    d.set_item("ac_group", r.ac_group)?;
    d.set_item("vertices", r.vertices)?;
    d.set_item("collapsed_vertices", r.collapsed_vertices)?;
    d.set_item("verdict", r.actual())?;
    d.set_item("expected", r.expected.to_string())?;
    d.set_item("certificate", r.witness.as_ref().map(|w| Certificate::from_tuple(w).render()))?;
    d.set_item("notes", r.notes.clone())?;
    d.set_item("seconds", r.seconds)?;
    Ok(d)
}

/// Certificate text for a named witness construction, e.g. `witness("psl2", 13)`.
#[pyfunction]
#[pyo3(signature = (name, *params))]
fn witness(name: &str, params: Vec<u32>) -> PyResult<String> {
    let p = |i: usize| params.get(i).copied().ok_or_else(|| PyValueError::new_err("missing parameter"));
    let t = match name {
        "sym5" => Ok(pcg::wit::witness_sym5()),
        "alt3cycles" => pcg::wit::witness_alt_3cycles(p(0)? as usize),
        "sl3" => pcg::wit::witness_sl3(p(0)?, p(1)? as u16, p(2)? as u16),
        "su3" => pcg::wit::witness_su3(p(0)?),
        "sp4" => pcg::wit::witness_sp4(p(0)?),
        "psl2" => pcg::wit::witness_psl2(p(0)?),
        "ree3" => pcg::wit::witness_ree3(),
        _ => return Err(PyValueError::new_err(format!("unknown witness {name:?}"))),
    }
    .map_err(err)?;
    t.verify().map_err(err)?;
    Ok(Certificate::from_tuple(&t).render())
}

/// Parses and checks a certificate; raises `ValueError` if it is invalid.
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<bool> {
    Certificate::parse(text).and_then(|c| c.verify()).map_err(err)?;
    Ok(true)
}

/// Suite rows matching `filter`, as `<spec> <expected> <actual> <seconds> <PASS|FAIL>` lines.
#[pyfunction]
#[pyo3(signature = (filter=""))]
fn suite(filter: &str) -> Vec<String> {
    run_suite(filter, &AnalyzeOptions::default(), None, |_| {}).rows.iter().map(|r| r.line()).collect()
}

#[pymodule]
fn pcg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCommGraph>()?;
    m.add_function(wrap_pyfunction!(is_berge, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    Ok(())
}
