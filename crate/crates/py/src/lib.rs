//! Python module `thue`: graph builders, the explicit colorings, the
//! verifier and the exact solver from `thue-core`.
//!
//! Vertices and colors are 0-based integers throughout.

use std::time::Duration;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use thue_core::colorings::{self as col, Color};
use thue_core::graphs::{self, InnerKind};
use thue_core::sequences::{self as seq, SymbolSeq};
use thue_core::solver::{self, SearchLimits, Status, Witness};
use thue_core::verifier;
use thue_core::{json, Error};

create_exception!(thue, ResourceLimitError, PyException);
create_exception!(thue, NoSuchSequenceError, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) => PyValueError::new_err(e.to_string()),
        Error::ResourceLimit(_) => ResourceLimitError::new_err(e.to_string()),
        Error::NoSuchSequence(_) | Error::FallbackFailed { .. } => NoSuchSequenceError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for thue_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn inner_kind(name: &str) -> PyResult<InnerKind> {
    match name {
        "empty" | "E" => Ok(InnerKind::Empty),
        "complete" | "K" => Ok(InnerKind::Complete),
        _ => Err(PyValueError::new_err(format!("inner must be 'empty' or 'complete', got {name:?}"))),
    }
}

#[pyclass(name = "Graph", module = "thue", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: graphs::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: graphs::Graph::from_edges(n, &edges).py()? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn bfs_order(&self) -> Vec<usize> {
        self.inner.bfs_order()
    }

    fn to_json(&self) -> String {
        json::graph_to_json(&self.inner)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: json::graph_from_json(text).py()? })
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// `G[E_k]` or `G[K_k]`; vertex `(b, j)` has id `b*k + j`.
#[pyclass(name = "ProductGraph", module = "thue", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyProduct {
    inner: graphs::ProductGraph,
}

#[pymethods]
impl PyProduct {
    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn inner(&self) -> String {
        self.inner.inner().to_string()
    }

    #[getter]
    fn base(&self) -> PyGraph {
        PyGraph { inner: self.inner.base().clone() }
    }

    /// The product as a plain graph.
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph { inner: self.inner.view().clone() }
    }

    fn layer(&self, b: usize) -> PyResult<Vec<usize>> {
        self.inner.layer_vertices(b).py()
    }

    fn to_json(&self) -> String {
        json::product_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        let letter = match self.inner.inner() {
            InnerKind::Empty => 'E',
            InnerKind::Complete => 'K',
        };
        format!("ProductGraph(n={}, [{}{}])", self.inner.view().n(), letter, self.inner.k())
    }
}

#[pyclass(name = "Coloring", module = "thue", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyColoring {
    inner: col::Coloring,
}

#[pymethods]
impl PyColoring {
    #[new]
    fn new(palette: usize, colors: Vec<Color>) -> PyResult<Self> {
        Ok(PyColoring { inner: col::Coloring::new(palette, colors).py()? })
    }

    #[getter]
    fn palette(&self) -> usize {
        self.inner.palette()
    }

    #[getter]
    fn colors(&self) -> Vec<Color> {
        self.inner.colors().to_vec()
    }

    fn used_colors(&self) -> Vec<Color> {
        self.inner.used_colors()
    }

    fn to_json(&self) -> String {
        json::coloring_to_json(&self.inner)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyColoring { inner: json::coloring_from_json(text).py()? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Coloring(palette={}, n={})", self.inner.palette(), self.inner.len())
    }
}

/// Each vertex gets a `p`-subset of `0..q`.
#[pyclass(name = "TupleColoring", module = "thue", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTupleColoring {
    inner: col::TupleColoring,
}

#[pymethods]
impl PyTupleColoring {
    #[new]
    fn new(p: usize, q: usize, sets: Vec<Vec<Color>>) -> PyResult<Self> {
        Ok(PyTupleColoring { inner: col::TupleColoring::new(p, q, sets).py()? })
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }

    #[getter]
    fn sets(&self) -> Vec<Vec<Color>> {
        self.inner.sets().to_vec()
    }

    fn to_json(&self) -> String {
        json::tuple_coloring_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("TupleColoring(p={}, q={}, n={})", self.inner.p(), self.inner.q(), self.inner.len())
    }
}

#[pyclass(name = "SolveResult", module = "thue", frozen, get_all)]
pub struct PySolveResult {
    /// `"exact"`, `"lower_bound_only"` or `"timeout"`.
    status: String,
    value: Option<usize>,
    feasible: Option<bool>,
    lower_bound: Option<usize>,
    nodes_explored: u64,
    elapsed_secs: f64,
    coloring: Option<PyColoring>,
    tuple_coloring: Option<PyTupleColoring>,
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        format!(
            "SolveResult(status={:?}, value={:?}, feasible={:?}, nodes={})",
            self.status, self.value, self.feasible, self.nodes_explored
        )
    }
}

impl From<solver::SolveResult> for PySolveResult {
    fn from(r: solver::SolveResult) -> Self {
        let status = match r.status {
            Status::Exact => "exact",
            Status::LowerBoundOnly => "lower_bound_only",
            Status::Timeout => "timeout",
        };
        let (coloring, tuple_coloring) = match r.witness {
            Some(Witness::Coloring(c)) => (Some(PyColoring { inner: c }), None),
            Some(Witness::Tuple(t)) => (None, Some(PyTupleColoring { inner: t })),
            None => (None, None),
        };
        PySolveResult {
            status: status.to_string(),
            value: r.value,
            feasible: r.feasible,
            lower_bound: r.lower_bound,
            nodes_explored: r.nodes_explored,
            elapsed_secs: r.elapsed_secs,
            coloring,
            tuple_coloring,
        }
    }
}

fn limits(max_nodes: u64, time_limit: f64, palette_cap: usize) -> PyResult<SearchLimits> {
    if !(time_limit.is_finite() && time_limit > 0.0) {
        return Err(PyValueError::new_err("time_limit must be positive"));
    }
    let l = SearchLimits {
        max_nodes,
        time_budget: Duration::from_secs_f64(time_limit),
        palette_cap,
    };
    l.validate().py()?;
    Ok(l)
}

#[pyfunction]
fn path(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: graphs::build_path(n).py()? })
}

#[pyfunction]
fn cycle(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: graphs::build_cycle(n).py()? })
}

#[pyfunction]
fn complete(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: graphs::build_complete(n).py()? })
}

/// Rooted tree numbered breadth-first; returns the graph and each vertex's level.
#[pyfunction]
fn rooted_tree(root_children: usize, children: usize, depth: usize) -> PyResult<(PyGraph, Vec<usize>)> {
    let (g, meta) = graphs::build_rooted_tree(root_children, children, depth).py()?;
    Ok((PyGraph { inner: g }, meta.level))
}

#[pyfunction]
fn outerplanar_g0() -> PyGraph {
    PyGraph { inner: graphs::build_outerplanar_g0().0 }
}

#[pyfunction]
fn lex_product(base: &PyGraph, inner: &str, k: usize) -> PyResult<PyProduct> {
    Ok(PyProduct { inner: graphs::lex_product(&base.inner, inner_kind(inner)?, k).py()? })
}

#[pyfunction]
fn color_path_empty(n: usize, k: usize) -> PyResult<PyColoring> {
    Ok(PyColoring { inner: col::color_path_empty(n, k).py()? })
}

#[pyfunction]
fn color_path_rainbow(n: usize, k: usize) -> PyResult<PyColoring> {
    Ok(PyColoring { inner: col::color_path_rainbow(n, k).py()? })
}

#[pyfunction]
fn color_path_complete(n: usize, k: usize) -> PyResult<PyColoring> {
    Ok(PyColoring { inner: col::color_path_complete(n, k).py()? })
}

/// Coloring of `T[K_k]` for the tree `(root_children, children, depth)`.
/// Returns the product, the coloring and `"level_driver"` or `"search"`.
#[pyfunction]
#[pyo3(signature = (root_children, children, depth, k, check_bound=12))]
fn color_tree_complete(
    root_children: usize,
    children: usize,
    depth: usize,
    k: usize,
    check_bound: usize,
) -> PyResult<(PyProduct, PyColoring, &'static str)> {
    let (tree, meta) = graphs::build_rooted_tree(root_children, children, depth).py()?;
    let opts = col::TreeColoringOptions { check_bound, ..Default::default() };
    let tc = col::color_tree_complete(&tree, &meta, k, &opts).py()?;
    let source = match tc.source {
        col::TreeColoringSource::LevelDriver => "level_driver",
        col::TreeColoringSource::Search => "search",
    };
    Ok((PyProduct { inner: tc.product }, PyColoring { inner: tc.coloring }, source))
}

#[pyfunction]
fn c7_fractional_example() -> PyTupleColoring {
    PyTupleColoring { inner: col::c7_fractional_example() }
}

/// Per-layer color sets of a product coloring.
#[pyfunction]
fn layer_color_sets(pg: &PyProduct, coloring: &PyColoring) -> PyResult<Vec<Vec<Color>>> {
    Ok(col::layer_color_sets(&pg.inner, &coloring.inner).py()?.sets)
}

/// Richness labels of the layers as a string over `A`, `B`, `C` and `.`.
#[pyfunction]
fn label_layers(pg: &PyProduct, coloring: &PyColoring) -> PyResult<String> {
    let sets = col::layer_color_sets(&pg.inner, &coloring.inner).py()?;
    Ok(col::label_layers(&sets).render())
}

/// Vertices of the first repetitively colored path with at most
/// `max_vertices` vertices, or `None`. Defaults to every path.
#[pyfunction]
#[pyo3(signature = (graph, coloring, max_vertices=None))]
fn find_repetitive_path(
    py: Python<'_>,
    graph: &PyGraph,
    coloring: &PyColoring,
    max_vertices: Option<usize>,
) -> PyResult<Option<Vec<usize>>> {
    let bound = max_vertices.unwrap_or_else(|| verifier::exact_bound(graph.inner.n()));
    let w = py
        .detach(|| verifier::find_repetitive_path(&graph.inner, &coloring.inner, bound))
        .py()?;
    Ok(w.map(|w| w.path))
}

#[pyfunction]
#[pyo3(signature = (graph, coloring, max_vertices=None))]
fn is_nonrepetitive(
    py: Python<'_>,
    graph: &PyGraph,
    coloring: &PyColoring,
    max_vertices: Option<usize>,
) -> PyResult<bool> {
    Ok(find_repetitive_path(py, graph, coloring, max_vertices)?.is_none())
}

#[pyfunction]
#[pyo3(signature = (graph, coloring, max_vertices=None))]
fn find_tuple_repetitive_path(
    py: Python<'_>,
    graph: &PyGraph,
    coloring: &PyTupleColoring,
    max_vertices: Option<usize>,
) -> PyResult<Option<Vec<usize>>> {
    let bound = max_vertices.unwrap_or_else(|| verifier::exact_bound(graph.inner.n()));
    let w = py
        .detach(|| verifier::find_tuple_repetitive_path(&graph.inner, &coloring.inner, bound))
        .py()?;
    Ok(w.map(|w| w.path))
}

#[pyfunction]
#[pyo3(signature = (graph, coloring, max_walk_vertices, budget=100_000_000))]
fn find_repetitive_walk(
    graph: &PyGraph,
    coloring: &PyColoring,
    max_walk_vertices: usize,
    budget: u64,
) -> PyResult<Option<Vec<usize>>> {
    let w = verifier::find_repetitive_walk(&graph.inner, &coloring.inner, max_walk_vertices, budget).py()?;
    Ok(w.map(|w| w.walk))
}

#[pyfunction]
fn is_rainbow(pg: &PyProduct, coloring: &PyColoring) -> bool {
    verifier::is_rainbow(&pg.inner, &coloring.inner)
}

#[pyfunction]
#[pyo3(signature = (graph, max_nodes=100_000_000, time_limit=600.0, palette_cap=64))]
fn thue_number(
    py: Python<'_>,
    graph: &PyGraph,
    max_nodes: u64,
    time_limit: f64,
    palette_cap: usize,
) -> PyResult<PySolveResult> {
    let l = limits(max_nodes, time_limit, palette_cap)?;
    Ok(py.detach(|| solver::thue_number(&graph.inner, &l)).py()?.into())
}

#[pyfunction]
#[pyo3(signature = (graph, q, max_nodes=100_000_000, time_limit=600.0))]
fn exists_coloring(
    py: Python<'_>,
    graph: &PyGraph,
    q: usize,
    max_nodes: u64,
    time_limit: f64,
) -> PyResult<PySolveResult> {
    let l = limits(max_nodes, time_limit, 64)?;
    Ok(py.detach(|| solver::exists_coloring(&graph.inner, q, &l)).py()?.into())
}

#[pyfunction]
#[pyo3(signature = (pg, max_nodes=100_000_000, time_limit=600.0, palette_cap=64))]
fn rainbow_thue_number(
    py: Python<'_>,
    pg: &PyProduct,
    max_nodes: u64,
    time_limit: f64,
    palette_cap: usize,
) -> PyResult<PySolveResult> {
    let l = limits(max_nodes, time_limit, palette_cap)?;
    Ok(py.detach(|| solver::rainbow_thue_number(&pg.inner, &l)).py()?.into())
}

#[pyfunction]
#[pyo3(signature = (graph, p, q, max_nodes=100_000_000, time_limit=600.0))]
fn exists_tuple_coloring(
    py: Python<'_>,
    graph: &PyGraph,
    p: usize,
    q: usize,
    max_nodes: u64,
    time_limit: f64,
) -> PyResult<PySolveResult> {
    let l = limits(max_nodes, time_limit, 64)?;
    Ok(py.detach(|| solver::exists_tuple_coloring(&graph.inner, p, q, &l)).py()?.into())
}

fn letters(s: &SymbolSeq) -> String {
    s.symbols().iter().map(|&b| (b'A' + b) as char).collect()
}

/// Lexicographically least square-free word over `sigma` letters, as `A..`.
#[pyfunction]
#[pyo3(signature = (sigma, length, palindrome_free=false))]
fn gen_nonrepetitive(sigma: usize, length: usize, palindrome_free: bool) -> PyResult<String> {
    Ok(letters(&seq::gen_nonrepetitive(sigma, length, palindrome_free).py()?))
}

/// `(start, period)` of the least square, `start` 1-based, or `None`.
#[pyfunction]
#[pyo3(signature = (word, max_period=None))]
fn find_repetition(word: &str, max_period: Option<usize>) -> PyResult<Option<(usize, usize)>> {
    let s = SymbolSeq::from_letters(word, None).py()?;
    Ok(seq::find_repetition(&s, max_period))
}

#[pyfunction]
fn is_palindrome_free(word: &str) -> PyResult<bool> {
    Ok(seq::is_palindrome_free(&SymbolSeq::from_letters(word, None).py()?))
}

/// 1-based peak positions and the gaps between them.
#[pyfunction]
fn gap_profile(word: &str) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let p = seq::gap_profile(&SymbolSeq::from_letters(word, None).py()?).py()?;
    Ok((p.peaks, p.gaps))
}

/// Index into the gap list of the first valley, or `None`.
#[pyfunction]
fn find_valley(word: &str) -> PyResult<Option<usize>> {
    let p = seq::gap_profile(&SymbolSeq::from_letters(word, None).py()?).py()?;
    Ok(seq::find_valley(&p))
}

/// Pattern number (1, 2 or 3) and 1-based window start of the valley.
#[pyfunction]
fn classify_valley(word: &str, valley: usize) -> PyResult<(u8, usize)> {
    let s = SymbolSeq::from_letters(word, Some(3)).py()?;
    let m = seq::classify_valley_pattern(&s, valley).py()?;
    Ok((m.pattern, m.window_start))
}

/// Square-free word over `A..D` with no `CD`/`DC` factor, or `None`.
#[pyfunction]
fn search_constrained(length: usize) -> PyResult<Option<String>> {
    Ok(seq::search_constrained(length).py()?.map(|s| letters(&s)))
}

#[pymodule]
fn thue(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add("NoSuchSequenceError", m.py().get_type::<NoSuchSequenceError>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyProduct>()?;
    m.add_class::<PyColoring>()?;
    m.add_class::<PyTupleColoring>()?;
    m.add_class::<PySolveResult>()?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(rooted_tree, m)?)?;
    m.add_function(wrap_pyfunction!(outerplanar_g0, m)?)?;
    m.add_function(wrap_pyfunction!(lex_product, m)?)?;
    m.add_function(wrap_pyfunction!(color_path_empty, m)?)?;
    m.add_function(wrap_pyfunction!(color_path_rainbow, m)?)?;
    m.add_function(wrap_pyfunction!(color_path_complete, m)?)?;
    m.add_function(wrap_pyfunction!(color_tree_complete, m)?)?;
    m.add_function(wrap_pyfunction!(c7_fractional_example, m)?)?;
    m.add_function(wrap_pyfunction!(layer_color_sets, m)?)?;
    m.add_function(wrap_pyfunction!(label_layers, m)?)?;
    m.add_function(wrap_pyfunction!(find_repetitive_path, m)?)?;
    m.add_function(wrap_pyfunction!(is_nonrepetitive, m)?)?;
    m.add_function(wrap_pyfunction!(find_tuple_repetitive_path, m)?)?;
    m.add_function(wrap_pyfunction!(find_repetitive_walk, m)?)?;
    m.add_function(wrap_pyfunction!(is_rainbow, m)?)?;
    m.add_function(wrap_pyfunction!(thue_number, m)?)?;
    m.add_function(wrap_pyfunction!(exists_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(rainbow_thue_number, m)?)?;
    m.add_function(wrap_pyfunction!(exists_tuple_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(gen_nonrepetitive, m)?)?;
    m.add_function(wrap_pyfunction!(find_repetition, m)?)?;
    m.add_function(wrap_pyfunction!(is_palindrome_free, m)?)?;
    m.add_function(wrap_pyfunction!(gap_profile, m)?)?;
    m.add_function(wrap_pyfunction!(find_valley, m)?)?;
    m.add_function(wrap_pyfunction!(classify_valley, m)?)?;
    m.add_function(wrap_pyfunction!(search_constrained, m)?)?;
    Ok(())
}
