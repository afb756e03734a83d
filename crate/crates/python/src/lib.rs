use std::sync::Arc;

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use braidforge_core as bf;
use bf::morse::{minimal_presentation, morse_presentation, Rewriter, DEFAULT_MAX_STEPS};
use bf::representations::{CMatrix, SolveOptions, UnitaryAssignment};
use bf::{Cell, MorseClass};

fn err(e: bf::Error) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn cell(s: &str) -> PyResult<Cell> {
    s.parse().map_err(err)
}

/// A graph with spanning tree, root and rotation system.
#[pyclass(name = "Graph", module = "braidforge", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: bf::Graph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: bf::graph::parse_graph(text).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_file()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn subdivide(&self, n: usize) -> Self {
        PyGraph { inner: bf::graph::subdivide_for(&self.inner, n) }
    }

    fn is_sufficient(&self, n: usize) -> bool {
        bf::graph::check_subdivision(&self.inner, n).is_sufficient()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertices().len()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edges().len()
    }
}

/// Generators and relators; relators are lists of `(generator, ±1)`.
#[pyclass(name = "Presentation", module = "braidforge", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPresentation {
    inner: bf::FPGroup,
}

#[pymethods]
impl PyPresentation {
    #[new]
    fn new(generators: Vec<String>, relators: Vec<Vec<(usize, i64)>>) -> PyResult<Self> {
        let json = bf::presentation::PresentationJson { generators, relators };
        Ok(PyPresentation { inner: bf::FPGroup::from_json(&json).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: bf::io::parse_presentation(text).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators.clone()
    }

    #[getter]
    fn relators(&self) -> Vec<Vec<(usize, i64)>> {
        self.inner.to_json().relators
    }

    /// First homology, e.g. `"Z^3"`.
    fn h1(&self) -> String {
        bf::presentation::homology_h1(&self.inner).to_string()
    }

    fn minimize(&self) -> Self {
        PyPresentation { inner: bf::presentation::tietze_minimize(&self.inner, None).group }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({} generators, {} relators)", self.inner.generators.len(), self.inner.relators.len())
    }
}

/// The discretized configuration complex of `n` particles.
#[pyclass(name = "Complex", module = "braidforge", frozen)]
struct PyComplex {
    inner: bf::DiscreteComplex,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(graph: &PyGraph, n: usize) -> PyResult<Self> {
        let g = bf::OrderedGraph::new(&graph.inner).map_err(err)?;
        Ok(PyComplex { inner: bf::DiscreteComplex::new(Arc::new(g), n).map_err(err)? })
    }

    #[getter]
    fn particles(&self) -> usize {
        self.inner.particles()
    }

    fn critical_cells(&self, dim: usize) -> Vec<String> {
        self.inner.critical_cells(dim).iter().map(|c| c.to_string()).collect()
    }

    fn cell_count(&self, dim: usize) -> usize {
        self.inner.enumerate(dim).len()
    }

    /// `"critical"`, `"redundant {image}"` or `"collapsible {preimage}"`.
    fn classify(&self, c: &str) -> PyResult<String> {
        Ok(match self.inner.classify(&cell(c)?).map_err(err)? {
            MorseClass::Critical => "critical".into(),
            MorseClass::Redundant { image } => format!("redundant {image}"),
            MorseClass::Collapsible { preimage } => format!("collapsible {preimage}"),
        })
    }

    fn boundary_word(&self, c: &str) -> PyResult<String> {
        Ok(self.inner.boundary_word(&cell(c)?).map_err(err)?.to_string())
    }

    /// Critical word equal to a word of 1-cells such as `"{e(1,8), 2} {e(5,9), 6}^-1"`.
    #[pyo3(signature = (word, max_steps = DEFAULT_MAX_STEPS))]
    fn rewrite(&self, word: &str, max_steps: usize) -> PyResult<String> {
        let w = bf::physical::parse_cell_word(word).map_err(err)?;
        Ok(Rewriter::with_max_steps(&self.inner, max_steps).rewrite(&w).map_err(err)?.to_string())
    }

    #[pyo3(signature = (max_steps = DEFAULT_MAX_STEPS))]
    fn presentation(&self, py: Python<'_>, max_steps: usize) -> PyResult<PyPresentation> {
        let p = py.detach(|| morse_presentation(&self.inner, max_steps)).map_err(err)?;
        Ok(PyPresentation { inner: p.to_fp_group(&self.inner) })
    }

    #[pyo3(signature = (max_steps = DEFAULT_MAX_STEPS))]
    fn minimal_presentation(&self, py: Python<'_>, max_steps: usize) -> PyResult<PyPresentation> {
        let m = py.detach(|| minimal_presentation(&self.inner, max_steps)).map_err(err)?;
        Ok(PyPresentation { inner: m.group().clone() })
    }

    fn oracle_presentation(&self) -> PyResult<PyPresentation> {
        Ok(PyPresentation { inner: bf::oracle::oracle_presentation(&self.inner).map_err(err)? })
    }

    /// Presentation over exchange loops plus the dictionary `cell -> loop word`.
    #[pyo3(signature = (loops_json, max_steps = DEFAULT_MAX_STEPS))]
    fn physical_presentation(&self, loops_json: &str, max_steps: usize) -> PyResult<(PyPresentation, Vec<(String, String)>)> {
        let pp = physical(&self.inner, loops_json, max_steps)?;
        let dict = pp.dictionary.iter().map(|(c, w)| (c.to_string(), pp.named(w).to_string())).collect();
        Ok((PyPresentation { inner: pp.group() }, dict))
    }

    /// Phase constraints when every Y-loop acts by a scalar.
    #[pyo3(signature = (loops_json, k = 1, max_steps = DEFAULT_MAX_STEPS))]
    fn locally_abelian(&self, loops_json: &str, k: usize, max_steps: usize) -> PyResult<Vec<String>> {
        let pp = physical(&self.inner, loops_json, max_steps)?;
        let la = bf::representations::locally_abelian_solve(&pp, k).map_err(err)?;
        Ok(la.constraints.iter().map(|c| c.to_string()).collect())
    }
}

fn physical(c: &bf::DiscreteComplex, loops_json: &str, max_steps: usize) -> PyResult<bf::physical::PhysicalPresentation> {
    let specs = bf::physical::parse_loops(loops_json).map_err(err)?;
    let m = minimal_presentation(c, max_steps).map_err(err)?;
    bf::physical::solve_physical_presentation(c, &m, &specs, max_steps).map_err(err)
}

type PyMatrix = Vec<Vec<Complex64>>;

fn to_matrix(rows: &PyMatrix) -> PyResult<CMatrix> {
    let k = rows.len();
    if rows.iter().any(|r| r.len() != k) {
        return Err(PyValueError::new_err("matrices must be square"));
    }
    Ok(CMatrix::from_fn(k, k, |i, j| rows[i][j]))
}

fn from_matrix(m: &CMatrix) -> PyMatrix {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

/// Relator deviations `|R_i(U) - I|_F` for one matrix per generator.
#[pyfunction]
#[pyo3(signature = (presentation, matrices, tol = 1e-8))]
fn verify_representation(presentation: &PyPresentation, matrices: Vec<PyMatrix>, tol: f64) -> PyResult<(bool, Vec<f64>)> {
    let mats = matrices.iter().map(to_matrix).collect::<PyResult<Vec<_>>>()?;
    let a = UnitaryAssignment::new(presentation.inner.generators.clone(), mats).map_err(err)?;
    let r = bf::representations::verify_representation(&presentation.inner, &a, tol).map_err(err)?;
    Ok((r.pass, r.deviations))
}

/// Searches for `k x k` unitaries satisfying every relator.
#[pyfunction]
#[pyo3(signature = (presentation, k, seed = 0, tol = 1e-8, restarts = 20))]
fn solve_representation(
    py: Python<'_>,
    presentation: &PyPresentation,
    k: usize,
    seed: u64,
    tol: f64,
    restarts: usize,
) -> PyResult<Vec<PyMatrix>> {
    let opts = SolveOptions { seed, tol, restarts, ..SolveOptions::default() };
    let out = py.detach(|| bf::representations::solve_representation(&presentation.inner, k, &opts)).map_err(err)?;
    Ok(out.assignment.matrices.iter().map(from_matrix).collect())
}

#[pymodule]
fn braidforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(verify_representation, m)?)?;
    m.add_function(wrap_pyfunction!(solve_representation, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
