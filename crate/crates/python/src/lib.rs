//! Python bindings. Bit strings cross the boundary as `str` of '0'/'1'.

use orientable::bounds::{self, LowerBoundMethod};
use orientable::search::{self, Heuristic, DEFAULT_BUDGET};
use orientable::verify::{check_orientable, covers_s, cyclic_equal};
use orientable::{concat, cyclejoin, successor, word};
use orientable::{BinaryWord, CyclicSequence, Mode};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_word(s: &str) -> PyResult<BinaryWord> {
    s.parse().map_err(value_err)
}

/// A binary sequence read cyclically or acyclically.
#[pyclass(name = "Sequence", module = "orientable", frozen, eq)]
#[derive(Clone, PartialEq)]
struct PySequence(CyclicSequence);

#[pymethods]
impl PySequence {
    #[new]
    #[pyo3(signature = (bits, cyclic = true))]
    fn new(bits: &str, cyclic: bool) -> PyResult<Self> {
        let mode = if cyclic { Mode::Cyclic } else { Mode::Acyclic };
        CyclicSequence::parse(bits, mode).map(Self).map_err(value_err)
    }

    #[getter]
    fn bits(&self) -> String {
        self.0.to_string()
    }

    #[getter]
    fn cyclic(&self) -> bool {
        self.0.is_cyclic()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Sequence({:?}, cyclic={})", self.0.to_string(), if self.0.is_cyclic() { "True" } else { "False" })
    }

    fn rotated(&self, k: usize) -> Self {
        Self(self.0.rotated_left(k))
    }

    fn reversed(&self) -> Self {
        Self(self.0.reversed())
    }

    fn canonical(&self) -> Self {
        Self(self.0.canonical_rotation())
    }

    fn is_orientable(&self, n: usize) -> PyResult<bool> {
        Ok(self.violation(n)?.is_none())
    }

    /// Description of the first offending window, or None.
    fn violation(&self, n: usize) -> PyResult<Option<String>> {
        Ok(check_orientable(&self.0, n).map_err(value_err)?.map(|v| v.to_string()))
    }

    /// True when the windows are exactly the rotations of asymmetric bracelets.
    fn covers(&self, n: usize) -> PyResult<bool> {
        Ok(covers_s(&self.0, n).map_err(value_err)?.is_covered())
    }

    fn cyclic_equal(&self, other: &PySequence) -> bool {
        cyclic_equal(&self.0, &other.0)
    }
}

/// Streams bits from the successor rule.
#[pyclass(name = "SuccessorGenerator", module = "orientable")]
struct PySuccessorGenerator(successor::SuccessorGenerator);

#[pymethods]
impl PySuccessorGenerator {
    #[new]
    #[pyo3(signature = (n, seed = None))]
    fn new(n: usize, seed: Option<&str>) -> PyResult<Self> {
        let seed = seed.map(parse_word).transpose()?;
        successor::SuccessorGenerator::new(n, seed.as_ref()).map(Self).map_err(value_err)
    }

    #[getter]
    fn window(&self) -> String {
        word::bits_to_string(self.0.window())
    }

    #[getter]
    fn membership_tests(&self) -> u64 {
        self.0.membership_tests()
    }

    fn step(&mut self) -> u8 {
        self.0.step()
    }

    fn take(&mut self, count: u64) -> String {
        let mut bits = Vec::new();
        self.0.emit(count, &mut bits);
        word::bits_to_string(&bits)
    }

    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(&mut self) -> u8 {
        self.0.step()
    }
}

/// Sequence of length L_n from "successor" or "rcl".
#[pyfunction]
#[pyo3(signature = (n, algo = "successor", seed = None))]
fn generate(n: usize, algo: &str, seed: Option<&str>) -> PyResult<PySequence> {
    let seq = match (algo, seed) {
        ("successor", seed) => {
            let seed = seed.map(parse_word).transpose()?;
            successor::generate_from_successor(n, seed.as_ref())
        }
        ("rcl", None) => concat::fast_rcl_sequence(n),
        ("rcl", Some(_)) => return Err(PyValueError::new_err("seed only applies to the successor rule")),
        (other, _) => return Err(PyValueError::new_err(format!("unknown algorithm {other:?}"))),
    };
    seq.map(PySequence).map_err(value_err)
}

/// Next bit the successor rule emits after `window`.
#[pyfunction]
fn successor_bit(window: &str) -> PyResult<u8> {
    let w = successor::SuccessorWindow::new(parse_word(window)?).map_err(value_err)?;
    successor::successor_g(&w).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, enumerate = false))]
fn lower_bound(n: usize, enumerate: bool) -> PyResult<u128> {
    let method = if enumerate { LowerBoundMethod::Enumeration } else { LowerBoundMethod::Formula };
    bounds::lower_bound(n, method).map_err(value_err)
}

#[pyfunction]
fn upper_bound(n: usize) -> PyResult<u128> {
    bounds::upper_bound(n).map_err(value_err)
}

#[pyfunction]
fn trivial_upper_bound(n: usize) -> PyResult<u128> {
    bounds::trivial_upper_bound(n).map_err(value_err)
}

#[pyfunction]
fn aos_upper_bound(n: usize) -> PyResult<u128> {
    bounds::aos_upper_bound(n).map_err(value_err)
}

#[pyfunction]
fn count_asymmetric_bracelets(n: usize) -> PyResult<u128> {
    bounds::count_asymmetric_bracelets(n).map_err(value_err)
}

#[pyfunction]
fn asymmetric_bracelets(n: usize) -> Vec<String> {
    word::asymmetric_bracelets(n).iter().map(ToString::to_string).collect()
}

#[pyfunction]
fn is_asymmetric_bracelet(label: &str) -> PyResult<bool> {
    Ok(word::is_asymmetric_bracelet(&parse_word(label)?))
}

/// Parent of a non-root node in the cycle-joining tree.
#[pyfunction]
fn parent(label: &str) -> PyResult<String> {
    cyclejoin::parent(&parse_word(label)?).map(|p| p.to_string()).map_err(value_err)
}

/// Flip positions (1-based) that lead to children of `label`.
#[pyfunction]
fn children(label: &str) -> PyResult<Vec<usize>> {
    let mask = cyclejoin::find_children(&parse_word(label)?).map_err(value_err)?;
    Ok(mask.positions().collect())
}

#[pyfunction]
#[pyo3(signature = (seq, n, heuristic = "B", budget = DEFAULT_BUDGET))]
fn extend(seq: &PySequence, n: usize, heuristic: &str, budget: u64) -> PyResult<PySequence> {
    let h: Heuristic = heuristic.parse().map_err(value_err)?;
    search::extend_cyclic(&seq.0, n, h, budget).map(PySequence).map_err(value_err)
}

/// Unrolls a cyclic sequence into an acyclic one of length len + n - 1.
#[pyfunction]
fn make_aos(seq: &PySequence, n: usize) -> PyResult<PySequence> {
    search::make_aos(&seq.0, n).map(PySequence).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (seq, n, budget = DEFAULT_BUDGET))]
fn extend_aos(seq: &PySequence, n: usize, budget: u64) -> PyResult<PySequence> {
    search::extend_aos(&seq.0, n, budget).map(PySequence).map_err(value_err)
}

#[pyfunction]
fn exhaustive_max(n: usize) -> PyResult<PySequence> {
    search::exhaustive_max(n).map(PySequence).map_err(value_err)
}

#[pymodule]
#[pyo3(name = "orientable")]
fn orientable_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySequence>()?;
    m.add_class::<PySuccessorGenerator>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(successor_bit, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(aos_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(count_asymmetric_bracelets, m)?)?;
    m.add_function(wrap_pyfunction!(asymmetric_bracelets, m)?)?;
    m.add_function(wrap_pyfunction!(is_asymmetric_bracelet, m)?)?;
    m.add_function(wrap_pyfunction!(parent, m)?)?;
    m.add_function(wrap_pyfunction!(children, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(make_aos, m)?)?;
    m.add_function(wrap_pyfunction!(extend_aos, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_max, m)?)?;
    Ok(())
}
