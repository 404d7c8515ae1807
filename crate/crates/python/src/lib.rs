//! Python bindings for the `gensudoku` engine.
//!
//! Vectors cross the boundary as lists of ints, tableaux row-major with
//! 1-based cell indices. Engine errors surface as `ValueError`.

use gensudoku_core as core;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: core::Error) -> PyErr {
    match e {
        core::Error::Io(m) => PyOSError::new_err(m),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn assignment(cells: Vec<i64>) -> PyResult<core::Assignment> {
    let n = cells.len().isqrt();
    if n * n != cells.len() || n == 0 {
        return Err(PyValueError::new_err(format!(
            "a tableau needs a perfect-square number of cells, got {}",
            cells.len()
        )));
    }
    core::Assignment::new(n, cells).map_err(err)
}

fn givens(pairs: Vec<(usize, i64)>) -> Vec<core::Given> {
    pairs
        .into_iter()
        .map(|(i, v)| core::Given::new(i, v))
        .collect()
}

#[pyclass(module = "gensudoku", frozen, eq)]
#[derive(PartialEq)]
struct Permutation(core::Permutation);

#[pymethods]
impl Permutation {
    /// Permutation of `{1, ..., len(images)}` sending `i` to `images[i-1]`.
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        core::Permutation::from_images(&images)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(core::Permutation::identity(n))
    }

    #[staticmethod]
    fn transpose(n: usize) -> Self {
        Self(core::Permutation::transpose(n))
    }

    #[staticmethod]
    fn block(n: usize) -> PyResult<Self> {
        core::Permutation::block(n).map(Self).map_err(err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn image(&self, i: usize) -> PyResult<usize> {
        if i == 0 || i > self.0.size() {
            return Err(PyValueError::new_err(format!(
                "index {i} outside 1..={}",
                self.0.size()
            )));
        }
        Ok(self.0.image(i))
    }

    fn images(&self) -> Vec<usize> {
        self.0.images()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// `self ∘ other`.
    fn compose(&self, other: PyRef<'_, Permutation>) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Moves `x[j]` to position `π(j)`.
    fn apply(&self, x: Vec<i64>) -> PyResult<Vec<i64>> {
        self.0.apply_to_vector(&x).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.images())
    }
}

#[pyclass(module = "gensudoku", frozen, eq)]
#[derive(PartialEq)]
struct Partition(core::Partition);

#[pymethods]
impl Partition {
    #[new]
    fn new(n: usize, groups: Vec<Vec<usize>>) -> PyResult<Self> {
        core::Partition::new(n, groups).map(Self).map_err(err)
    }

    /// Groups cells by label; groups are ordered by first appearance.
    #[staticmethod]
    fn from_labels(n: usize, labels: Vec<String>) -> PyResult<Self> {
        core::Partition::from_labels(n, &labels)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn rows(n: usize) -> Self {
        Self(core::Partition::rows(n))
    }

    #[staticmethod]
    fn subsquares(n: usize) -> PyResult<Self> {
        core::Partition::subsquares(n).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn groups(&self) -> Vec<Vec<usize>> {
        self.0.groups().to_vec()
    }

    fn to_permutation(&self) -> Permutation {
        Permutation(self.0.to_permutation())
    }

    fn __repr__(&self) -> String {
        format!("Partition({}, {:?})", self.0.n(), self.0.groups())
    }
}

#[pyclass(module = "gensudoku", frozen)]
struct DifferenceMatrix(core::DifferenceMatrix);

#[pymethods]
impl DifferenceMatrix {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        core::DifferenceMatrix::new(n).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn row_count(&self) -> usize {
        self.0.row_count()
    }

    /// `(plus, minus)` column pairs, 1-based.
    fn rows(&self) -> Vec<(usize, usize)> {
        self.0.rows().iter().map(|r| (r.plus, r.minus)).collect()
    }

    fn apply(&self, x: Vec<i64>) -> PyResult<Vec<i64>> {
        self.0.apply(&x).map_err(err)
    }

    fn apply_transpose(&self, y: Vec<i64>) -> PyResult<Vec<i64>> {
        self.0.apply_transpose(&y).map_err(err)
    }

    fn to_dense(&self) -> Vec<Vec<i64>> {
        self.0.to_dense().to_rows()
    }

    fn rank(&self) -> usize {
        self.0.rank()
    }
}

#[pyclass(module = "gensudoku", frozen)]
struct ConstraintMatrix(core::ConstraintMatrix);

#[pymethods]
impl ConstraintMatrix {
    #[new]
    fn new(n: usize, perm: PyRef<'_, Permutation>) -> PyResult<Self> {
        core::ConstraintMatrix::new(n, perm.0.clone())
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn block_diagonal(n: usize) -> PyResult<Self> {
        core::ConstraintMatrix::block_diagonal(n)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn row_count(&self) -> usize {
        self.0.row_count()
    }

    #[getter]
    fn column_count(&self) -> usize {
        self.0.column_count()
    }

    #[getter]
    fn permutation(&self) -> Permutation {
        Permutation(self.0.permutation().clone())
    }

    fn row_pairs(&self) -> Vec<(usize, usize)> {
        self.0
            .row_pairs()
            .iter()
            .map(|r| (r.plus, r.minus))
            .collect()
    }

    fn apply(&self, x: Vec<i64>) -> PyResult<Vec<i64>> {
        self.0.apply(&x).map_err(err)
    }

    /// `A_πᵀ y` for an arbitrary integer vector.
    fn apply_transpose(&self, y: Vec<i64>) -> PyResult<Vec<i64>> {
        self.0.transpose_product(&y).map_err(err)
    }

    fn to_dense(&self) -> Vec<Vec<i64>> {
        self.0.to_dense().to_rows()
    }

    fn rank(&self) -> usize {
        self.0.to_dense().rank()
    }
}

#[pyclass(module = "gensudoku", frozen)]
struct ProblemSpec(core::ProblemSpec);

#[pymethods]
impl ProblemSpec {
    /// `givens` are `(cell, value)` pairs.
    #[new]
    #[pyo3(signature = (n, constraints, givens=vec![]))]
    fn new(
        n: usize,
        constraints: Vec<PyRef<'_, Permutation>>,
        givens: Vec<(usize, i64)>,
    ) -> PyResult<Self> {
        let perms = constraints.iter().map(|p| p.0.clone()).collect();
        core::ProblemSpec::new(n, perms, self::givens(givens))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, givens=vec![]))]
    fn classic(n: usize, givens: Vec<(usize, i64)>) -> PyResult<Self> {
        core::ProblemSpec::classic(n, self::givens(givens))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (partition, givens=vec![]))]
    fn gerechte(partition: PyRef<'_, Partition>, givens: Vec<(usize, i64)>) -> PyResult<Self> {
        core::ProblemSpec::gerechte(&partition.0, self::givens(givens))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, givens=vec![]))]
    fn latin(n: usize, givens: Vec<(usize, i64)>) -> PyResult<Self> {
        core::ProblemSpec::latin(n, self::givens(givens))
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn constraints(&self) -> Vec<Permutation> {
        self.0
            .constraints()
            .iter()
            .cloned()
            .map(Permutation)
            .collect()
    }

    #[getter]
    fn givens(&self) -> Vec<(usize, i64)> {
        self.0.givens().iter().map(|g| (g.index, g.value)).collect()
    }

    fn constraint_matrices(&self) -> Vec<ConstraintMatrix> {
        self.0
            .constraint_matrices()
            .iter()
            .cloned()
            .map(ConstraintMatrix)
            .collect()
    }

    fn with_givens(&self, givens: Vec<(usize, i64)>) -> PyResult<Self> {
        self.0
            .with_givens(self::givens(givens))
            .map(Self)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "ProblemSpec(n={}, constraints={}, givens={})",
            self.0.n(),
            self.0.constraints().len(),
            self.0.givens().len()
        )
    }
}

#[pyclass(module = "gensudoku", frozen, get_all)]
struct SolveOutcome {
    solutions: Vec<Vec<i64>>,
    nodes_explored: u64,
    exhausted: bool,
    diagnostic: Option<String>,
}

#[pymethods]
impl SolveOutcome {
    fn __repr__(&self) -> String {
        format!(
            "SolveOutcome(solutions={}, nodes_explored={}, exhausted={})",
            self.solutions.len(),
            self.nodes_explored,
            if self.exhausted { "True" } else { "False" }
        )
    }
}

impl From<core::SolveOutcome> for SolveOutcome {
    fn from(o: core::SolveOutcome) -> Self {
        Self {
            solutions: o.solutions.into_iter().map(|a| a.cells).collect(),
            nodes_explored: o.nodes_explored,
            exhausted: o.exhausted,
            diagnostic: o.diagnostic,
        }
    }
}

#[pyclass(module = "gensudoku", frozen)]
struct Puzzle(core::PuzzleDocument);

#[pymethods]
impl Puzzle {
    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    /// Rows of the tableau, `0` for an empty cell.
    #[getter]
    fn grid(&self) -> Vec<Vec<i64>> {
        self.0.grid.clone()
    }

    #[getter]
    fn region_path(&self) -> Option<String> {
        self.0.region_path.clone()
    }

    #[getter]
    fn source_name(&self) -> String {
        self.0.source_name.clone()
    }

    #[getter]
    fn givens(&self) -> Vec<(usize, i64)> {
        self.0.givens().iter().map(|g| (g.index, g.value)).collect()
    }

    /// Row-major cells, `0` for an empty cell.
    fn cells(&self) -> Vec<i64> {
        self.0.to_assignment().cells
    }

    /// The puzzle's problem; pass the region partition when the file names one.
    #[pyo3(signature = (regions=None))]
    fn problem(&self, regions: Option<PyRef<'_, Partition>>) -> PyResult<ProblemSpec> {
        self.0
            .problem(regions.as_deref().map(|p| &p.0))
            .map(ProblemSpec)
            .map_err(err)
    }
}

#[pyfunction]
fn triangular_sum(n: usize) -> PyResult<usize> {
    core::triangular_sum(n).map_err(err)
}

/// Componentwise sign; fails if any entry is zero.
#[pyfunction]
fn gsgn(y: Vec<i64>) -> PyResult<Vec<i64>> {
    core::gsgn(&y).map(|s| s.entries().to_vec()).map_err(err)
}

#[pyfunction]
fn pairwise_sign_sum(x: Vec<i64>, i: usize) -> PyResult<i64> {
    core::pairwise_sign_sum(&x, i).map_err(err)
}

#[pyfunction]
fn sign_sum_closed_form(value: i64, n: i64) -> i64 {
    core::sign_sum_closed_form(value, n)
}

/// `½(A_πᵀ sgn(A_π x) + (n+1)·1)`.
#[pyfunction]
fn reconstruct(c: PyRef<'_, ConstraintMatrix>, cells: Vec<i64>) -> PyResult<Vec<i64>> {
    core::reconstruct(&c.0, &assignment(cells)?).map_err(err)
}

#[pyfunction]
fn check_necessary<'py>(
    py: Python<'py>,
    spec: PyRef<'_, ProblemSpec>,
    cells: Vec<i64>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let reports = core::check_necessary(&spec.0, &assignment(cells)?).map_err(err)?;
    reports
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("constraint_id", r.constraint_id)?;
            d.set_item("holds", r.holds)?;
            d.set_item("reconstructed", r.reconstructed)?;
            let fv = r.first_violation.map(|m| (m.index, m.expected, m.actual));
            d.set_item("first_violation", fv)?;
            d.set_item("zero_rows", r.zero_rows)?;
            d.set_item("parity_cell", r.parity_cell)?;
            Ok(d)
        })
        .collect()
}

/// First given disagreeing with the reconstruction, or `None`.
#[pyfunction]
fn check_givens<'py>(
    py: Python<'py>,
    spec: PyRef<'_, ProblemSpec>,
    cells: Vec<i64>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let Some(m) = core::check_givens(&spec.0, &assignment(cells)?).map_err(err)? else {
        return Ok(None);
    };
    let d = PyDict::new(py);
    d.set_item("constraint_id", m.constraint_id)?;
    d.set_item("index", m.index)?;
    d.set_item("given", m.given)?;
    d.set_item("reconstructed", m.reconstructed)?;
    Ok(Some(d))
}

/// `None` when `cells` solves the spec, otherwise the first violated clause.
#[pyfunction]
fn verify_solution(spec: PyRef<'_, ProblemSpec>, cells: Vec<i64>) -> PyResult<Option<String>> {
    Ok(core::verify_solution(&spec.0, &assignment(cells)?)
        .err()
        .map(|v| v.to_string()))
}

#[pyfunction]
#[pyo3(signature = (spec, cap=None, selfcheck=true, parallel=false))]
fn solve(
    py: Python<'_>,
    spec: PyRef<'_, ProblemSpec>,
    cap: Option<usize>,
    selfcheck: bool,
    parallel: bool,
) -> PyResult<SolveOutcome> {
    let opts = core::SolveOptions {
        cap,
        selfcheck,
        parallel,
    };
    let p = &spec.0;
    py.detach(|| core::solve(p, opts))
        .map(SolveOutcome::from)
        .map_err(err)
}

/// Exhaustive enumeration of every fill-in of the free cells.
#[pyfunction]
fn brute_force(py: Python<'_>, spec: PyRef<'_, ProblemSpec>) -> PyResult<SolveOutcome> {
    let p = &spec.0;
    py.detach(|| core::brute_force(p))
        .map(SolveOutcome::from)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (text, source_name="<string>"))]
fn parse_puzzle(text: &str, source_name: &str) -> PyResult<Puzzle> {
    core::parse_puzzle(text, source_name)
        .map(Puzzle)
        .map_err(err)
}

#[pyfunction]
fn parse_regions(text: &str, n: usize) -> PyResult<Partition> {
    core::parse_regions(text, n).map(Partition).map_err(err)
}

#[pyfunction]
fn render_tableau(cells: Vec<i64>) -> PyResult<String> {
    Ok(core::render_tableau(&assignment(cells)?).text)
}

#[pyfunction]
#[pyo3(signature = (n, givens=vec![]))]
fn make_classic_spec(n: usize, givens: Vec<(usize, i64)>) -> PyResult<ProblemSpec> {
    ProblemSpec::classic(n, givens)
}

#[pyfunction]
#[pyo3(signature = (partition, givens=vec![]))]
fn make_gerechte_spec(
    partition: PyRef<'_, Partition>,
    givens: Vec<(usize, i64)>,
) -> PyResult<ProblemSpec> {
    ProblemSpec::gerechte(partition, givens)
}

#[pymodule(name = "gensudoku")]
fn gensudoku_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<Partition>()?;
    m.add_class::<DifferenceMatrix>()?;
    m.add_class::<ConstraintMatrix>()?;
    m.add_class::<ProblemSpec>()?;
    m.add_class::<SolveOutcome>()?;
    m.add_class::<Puzzle>()?;
    m.add_function(wrap_pyfunction!(triangular_sum, m)?)?;
    m.add_function(wrap_pyfunction!(gsgn, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_sign_sum, m)?)?;
    m.add_function(wrap_pyfunction!(sign_sum_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(check_necessary, m)?)?;
    m.add_function(wrap_pyfunction!(check_givens, m)?)?;
    m.add_function(wrap_pyfunction!(verify_solution, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(parse_puzzle, m)?)?;
    m.add_function(wrap_pyfunction!(parse_regions, m)?)?;
    m.add_function(wrap_pyfunction!(render_tableau, m)?)?;
    m.add_function(wrap_pyfunction!(make_classic_spec, m)?)?;
    m.add_function(wrap_pyfunction!(make_gerechte_spec, m)?)?;
    Ok(())
}
