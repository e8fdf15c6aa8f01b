//! Python bindings: signed permutations, supports, rank matrices, the
//! involution poset and the verification commands.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use symplorbit::cli::{cmd_degenerate, cmd_verify, Format, RunConfig};
use symplorbit::orbits::orbit_dimension;
use symplorbit::perm::{enumerate_involutions as enumerate, BruhatPoset, DEFAULT_MAX_N};
use symplorbit::rank_order::{
    leq_r, leq_rstar, rank_matrix as rank_matrix_of, rook_placement, verify_equivalences as verify_eq, HasseFormat,
    InvolutionPoset,
};
use symplorbit::roots::support as support_of;
use symplorbit::{Error, Involution, Laurent as CoreLaurent, WeylType};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode(s: &str) -> PyResult<WeylType> {
    s.parse().map_err(err)
}

fn json_to_py(py: Python<'_>, doc: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (doc,))?.unbind())
}

/// A signed permutation of {±1, …, ±n}, given by its window.
#[pyclass(name = "SignedPermutation", module = "pysymplorbit", eq, hash, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySignedPermutation {
    inner: symplorbit::SignedPermutation,
}

#[pymethods]
impl PySignedPermutation {
    #[new]
    fn new(images: Vec<i32>) -> PyResult<Self> {
        Ok(Self { inner: symplorbit::SignedPermutation::new(images).map_err(err)? })
    }

    #[staticmethod]
    fn parse(window: &str) -> PyResult<Self> {
        Ok(Self { inner: window.parse().map_err(err)? })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self { inner: symplorbit::SignedPermutation::identity(n) }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn images(&self) -> Vec<i32> {
        self.inner.images().to_vec()
    }

    fn apply(&self, i: i32) -> i32 {
        self.inner.apply(i)
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.compose(&other.inner).map_err(err)? })
    }

    fn inverse(&self) -> Self {
        Self { inner: self.inner.inverse() }
    }

    #[pyo3(signature = (mode = "C"))]
    fn length(&self, mode: &str) -> PyResult<usize> {
        Ok(self.inner.length_in(self::mode(mode)?))
    }

    fn is_involution(&self) -> bool {
        self.inner.is_involution()
    }

    /// Support of an involution, as root strings such as `"e1-e4"`.
    fn support(&self) -> PyResult<Vec<String>> {
        Ok(support_of(&self.inner).map_err(err)?.set.iter().map(ToString::to_string).collect())
    }

    /// Dimension of the B-orbit of `f_σ`, from the linearized action.
    fn orbit_dimension(&self) -> PyResult<usize> {
        orbit_dimension(&self.inner).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.window()
    }

    fn __repr__(&self) -> String {
        format!("SignedPermutation('{}')", self.inner.window())
    }
}

/// A Laurent polynomial in `s` with rational coefficients.
#[pyclass(name = "Laurent", module = "pysymplorbit", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyLaurent {
    inner: CoreLaurent,
}

#[pymethods]
impl PyLaurent {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(err)? })
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: self.inner.clone() + other.inner.clone() }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: self.inner.clone() - other.inner.clone() }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: self.inner.clone() * other.inner.clone() }
    }

    fn __neg__(&self) -> Self {
        Self { inner: -self.inner.clone() }
    }

    /// The value at s = 0 as a string, or None when a negative power occurs.
    fn limit_at_zero(&self) -> Option<String> {
        self.inner.limit_at_zero().ok().map(|q| q.to_string())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Laurent('{}')", self.inner)
    }
}

fn involution(s: &PySignedPermutation) -> PyResult<Involution> {
    Involution::try_from(s.inner.clone()).map_err(err)
}

/// Involutions sorted by length, then window.
#[pyfunction]
#[pyo3(signature = (n, mode = "C"))]
fn enumerate_involutions(n: usize, mode: &str) -> PyResult<Vec<PySignedPermutation>> {
    Ok(enumerate(n, self::mode(mode)?, DEFAULT_MAX_N)
        .map_err(err)?
        .into_iter()
        .map(|s| PySignedPermutation { inner: s.into() })
        .collect())
}

type Grid = Vec<Vec<u32>>;

/// `(R, R*)` of an involution.
#[pyfunction]
#[pyo3(signature = (sigma, mode = "C"))]
fn rank_matrix(sigma: &PySignedPermutation, mode: &str) -> PyResult<(Grid, Grid)> {
    let m = rank_matrix_of(&rook_placement(&sigma.inner, self::mode(mode)?).map_err(err)?).map_err(err)?;
    Ok((m.r, m.rstar))
}

/// `(bruhat, leq_r, leq_rstar)` for two involutions of the same rank.
#[pyfunction]
#[pyo3(signature = (sigma, tau, mode = "C"))]
fn compare(sigma: &PySignedPermutation, tau: &PySignedPermutation, mode: &str) -> PyResult<(bool, bool, bool)> {
    let ty = self::mode(mode)?;
    let (s, t) = (involution(sigma)?, involution(tau)?);
    let poset = BruhatPoset::build(s.n(), ty, DEFAULT_MAX_N).map_err(err)?;
    let a = rank_matrix_of(&rook_placement(&s, ty).map_err(err)?).map_err(err)?;
    let b = rank_matrix_of(&rook_placement(&t, ty).map_err(err)?).map_err(err)?;
    Ok((poset.leq(&s, &t).map_err(err)?, leq_r(&a, &b).map_err(err)?, leq_rstar(&a, &b).map_err(err)?))
}

/// Summary of the all-pairs comparison as a dict.
#[pyfunction]
#[pyo3(signature = (n, mode = "C"))]
fn verify_equivalences(py: Python<'_>, n: usize, mode: &str) -> PyResult<Py<PyAny>> {
    let r = verify_eq(n, self::mode(mode)?, DEFAULT_MAX_N).map_err(err)?;
    json_to_py(py, &serde_json::to_string(&r).expect("serializable"))
}

/// Hasse diagram of the involution poset as DOT or JSON text.
#[pyfunction]
#[pyo3(signature = (n, mode = "C", format = "dot"))]
fn hasse(n: usize, mode: &str, format: &str) -> PyResult<String> {
    let format: HasseFormat = format.parse().map_err(err)?;
    let poset = InvolutionPoset::build(n, self::mode(mode)?, DEFAULT_MAX_N).map_err(err)?;
    Ok(poset.export_hasse(format))
}

/// The degeneration curve report for `i < k < j ≤ n` as a dict.
#[pyfunction]
fn degenerate(py: Python<'_>, i: usize, k: usize, j: usize, n: usize) -> PyResult<Py<PyAny>> {
    let r = cmd_degenerate(i, k, j, n).map_err(err)?;
    json_to_py(py, &serde_json::to_string(&r).expect("serializable"))
}

/// Run every verification suite and return the report as a dict.
#[pyfunction]
#[pyo3(signature = (n, mode = "C", seed = 0, samples = 20))]
fn verify(py: Python<'_>, n: usize, mode: &str, seed: u64, samples: usize) -> PyResult<Py<PyAny>> {
    let cfg = RunConfig::new(n, self::mode(mode)?, seed, Format::Json);
    let r = py.detach(|| cmd_verify(&cfg, &[], samples)).map_err(err)?;
    json_to_py(py, &r.to_json())
}

#[pymodule]
fn pysymplorbit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Add every class and function to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignedPermutation>()?;
    m.add_class::<PyLaurent>()?;
    m.add_function(wrap_pyfunction!(enumerate_involutions, m)?)?;
    m.add_function(wrap_pyfunction!(rank_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(verify_equivalences, m)?)?;
    m.add_function(wrap_pyfunction!(hasse, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
