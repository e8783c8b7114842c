//! Python view of the `infpow` types. Coefficients and seminorm values come
//! back as `fractions.Fraction`; reports come back as JSON strings.

use pyo3::basic::CompareOp;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use infpow::extension::{derivation_d, ext_seminorm, iota, radical_predicate, theta};
use infpow::literal::{parse_comm, parse_ext, parse_tensor};
use infpow::report::{run_verification, run_witness, RunConfig, WitnessRequest};
use infpow::{
    functionals, psi, seminorms, CommSeries, ExtElement, ExtSeminormKind, FunctionalFamily, Rational, TensorSeries,
    TruncationCtx, Word,
};

create_exception!(pyinfpow, InfpowError, PyValueError);

fn err(e: infpow::Error) -> PyErr {
    InfpowError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn compare<T: PartialEq>(a: &T, b: &T, op: CompareOp) -> PyResult<bool> {
    match op {
        CompareOp::Eq => Ok(a == b),
        CompareOp::Ne => Ok(a != b),
        _ => Err(InfpowError::new_err("series are not ordered")),
    }
}

/// Element of the truncated tensor algebra.
#[pyclass(name = "Tensor", module = "pyinfpow", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTensor(TensorSeries);

#[pymethods]
impl PyTensor {
    #[new]
    #[pyo3(signature = (literal, max_index = 3, max_degree = 3, strict = false))]
    fn new(literal: &str, max_index: usize, max_degree: usize, strict: bool) -> PyResult<Self> {
        parse_tensor(TruncationCtx::new(max_index, max_degree), literal, strict)
            .map(PyTensor)
            .map_err(err)
    }

    #[getter]
    fn max_index(&self) -> usize {
        self.0.ctx().max_index
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.0.ctx().max_degree
    }

    fn coeff<'py>(&self, py: Python<'py>, word: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.coeff(&Word::new(word)))
    }

    /// `[(letters, Fraction), ...]` in word order.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<usize>, Bound<'py, PyAny>)>> {
        self.0
            .terms()
            .map(|(w, c)| Ok((w.letters().to_vec(), fraction(py, c)?)))
            .collect()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn graded_component(&self, r: usize) -> Self {
        PyTensor(self.0.graded_component(r))
    }

    fn zero_class_projection(&self, r: usize, k: usize) -> Self {
        PyTensor(self.0.zero_class_projection(r, k))
    }

    fn left_division(&self, j: usize) -> PyResult<Self> {
        self.0.left_division(j).map(PyTensor).map_err(err)
    }

    fn alpha(&self) -> Self {
        PyTensor(self.0.averaging_alpha())
    }

    fn derivation(&self, i: usize) -> Self {
        PyTensor(self.0.tensor_derivation(i))
    }

    fn tau_c<'py>(&self, py: Python<'py>, n: usize, m: usize) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &seminorms::tau_c_seminorm(&self.0, n, m))
    }

    fn tau_i<'py>(&self, py: Python<'py>, n: usize, m: usize, i: usize) -> PyResult<Bound<'py, PyAny>> {
        FunctionalFamily::psi_at(i).map_err(err)?;
        fraction(py, &seminorms::tau_i_seminorm(&self.0, n, m, i))
    }

    fn row_tensor<'py>(&self, py: Python<'py>, l: Vec<usize>, i: usize) -> PyResult<Bound<'py, PyAny>> {
        let family = FunctionalFamily::psi_at(i).map_err(err)?;
        let v = functionals::row_tensor(family, &Word::new(l), &self.0).map_err(err)?;
        fraction(py, &v)
    }

    fn psi(&self, i: usize, n: usize) -> PyResult<Self> {
        psi::apply_psi(&self.0, i, n).map(PyTensor).map_err(err)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyTensor(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyTensor(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyTensor(&self.0 * &other.0)
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> PyResult<bool> {
        compare(&self.0, &other.0, op)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tensor('{}', max_index={}, max_degree={})", self.0, self.max_index(), self.max_degree())
    }
}

/// Truncated commutative power series.
#[pyclass(name = "Comm", module = "pyinfpow", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyComm(CommSeries);

#[pymethods]
impl PyComm {
    #[new]
    #[pyo3(signature = (literal, max_index = 3, max_degree = 3, strict = false))]
    fn new(literal: &str, max_index: usize, max_degree: usize, strict: bool) -> PyResult<Self> {
        parse_comm(TruncationCtx::new(max_index, max_degree), literal, strict)
            .map(PyComm)
            .map_err(err)
    }

    #[staticmethod]
    fn collapse(t: &PyTensor) -> Self {
        PyComm(CommSeries::collapse(&t.0))
    }

    fn embed(&self) -> PyTensor {
        PyTensor(self.0.embed_symmetric())
    }

    fn partial(&self, i: usize) -> Self {
        PyComm(self.0.partial_derivative(i))
    }

    fn constant_term<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.constant_term())
    }

    fn p<'py>(&self, py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &seminorms::p_k(&self.0, k))
    }

    fn p_prime<'py>(&self, py: Python<'py>, k: usize, i: usize) -> PyResult<Bound<'py, PyAny>> {
        FunctionalFamily::psi_at(i).map_err(err)?;
        fraction(py, &seminorms::p_prime_k(&self.0, k, i))
    }

    fn __add__(&self, other: &Self) -> Self {
        PyComm(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyComm(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyComm(&self.0 * &other.0)
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> PyResult<bool> {
        compare(&self.0, &other.0, op)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Comm('{}')", self.0)
    }
}

/// Element `(x, m)` of the square-zero extension.
#[pyclass(name = "Ext", module = "pyinfpow", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyExt(ExtElement);

#[pymethods]
impl PyExt {
    #[new]
    fn new(x: &PyComm, m: &PyComm) -> Self {
        PyExt(ExtElement::new(x.0.clone(), m.0.clone()))
    }

    #[staticmethod]
    #[pyo3(signature = (literal, max_index = 3, max_degree = 3, strict = false))]
    fn parse(literal: &str, max_index: usize, max_degree: usize, strict: bool) -> PyResult<Self> {
        parse_ext(TruncationCtx::new(max_index, max_degree), literal, strict)
            .map(PyExt)
            .map_err(err)
    }

    #[staticmethod]
    fn iota(x: &PyComm) -> Self {
        PyExt(iota(&x.0))
    }

    #[getter]
    fn x(&self) -> PyComm {
        PyComm(self.0.x.clone())
    }

    #[getter]
    fn m(&self) -> PyComm {
        PyComm(self.0.m.clone())
    }

    fn theta(&self, i: usize) -> Self {
        PyExt(theta(i, &self.0))
    }

    fn derivation(&self, i: usize) -> Self {
        PyExt(derivation_d(i, &self.0))
    }

    fn in_radical(&self) -> bool {
        radical_predicate(&self.0)
    }

    /// `kind` is one of `q`, `qprime`, `qdel`, `qdelprime`.
    #[pyo3(signature = (kind, k, i = 1))]
    fn seminorm<'py>(&self, py: Python<'py>, kind: &str, k: usize, i: usize) -> PyResult<Bound<'py, PyAny>> {
        let kind = match kind {
            "q" => ExtSeminormKind::Q { k },
            "qprime" => ExtSeminormKind::QPrime { k, i },
            "qdel" => ExtSeminormKind::QDel { k, i },
            "qdelprime" => ExtSeminormKind::QDelPrime { k, i },
            other => return Err(InfpowError::new_err(format!("unknown seminorm {other:?}"))),
        };
        fraction(py, &ext_seminorm(kind, &self.0))
    }

    fn __add__(&self, other: &Self) -> Self {
        PyExt(self.0.add(&other.0))
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyExt(self.0.ext_mul(&other.0))
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> PyResult<bool> {
        compare(&self.0, &other.0, op)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ext.parse('{}')", self.0)
    }
}

/// Assembled matrix of `Psi^(r)`.
#[pyclass(name = "PsiMatrix", module = "pyinfpow", frozen, skip_from_py_object)]
struct PyPsiMatrix(psi::PsiMatrix);

#[pymethods]
impl PyPsiMatrix {
    #[getter]
    fn basis(&self) -> Vec<String> {
        self.0.basis.iter().map(Word::to_string).collect()
    }

    #[getter]
    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.0
            .entries
            .iter()
            .map(|row| row.iter().map(|v| fraction(py, v)).collect())
            .collect()
    }

    fn determinant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.determinant())
    }

    fn is_block_lower_triangular(&self) -> bool {
        self.0.is_block_lower_triangular()
    }

    fn diagonal_blocks_identity(&self) -> bool {
        self.0.diagonal_blocks_identity()
    }

    fn diagonal_blocks_unipotent(&self) -> bool {
        self.0.diagonal_blocks_unipotent()
    }

    fn apply(&self, a: &PyTensor) -> PyResult<PyTensor> {
        self.0.apply(&a.0).map(PyTensor).map_err(err)
    }

    fn invert(&self, b: &PyTensor) -> PyResult<PyTensor> {
        psi::invert_psi(&b.0, &self.0).map(PyTensor).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }
}

#[pyfunction]
fn psi_matrix(r: usize, n: usize, i: usize) -> PyResult<PyPsiMatrix> {
    psi::psi_matrix(r, n, i).map(PyPsiMatrix).map_err(err)
}

/// `(same_class_failures, lower_class_failures, checked)` for psi at `i`.
#[pyfunction]
fn check_statements(r_max: usize, n_max: usize, i: usize) -> PyResult<(usize, usize, usize)> {
    let family = FunctionalFamily::psi_at(i).map_err(err)?;
    let rep = psi::check_statements(r_max, n_max, &[family]).map_err(err)?;
    Ok((
        rep.same_class.failed,
        rep.lower_class.failed,
        rep.same_class.checked + rep.lower_class.checked,
    ))
}

/// Runs the verification suites; `settings` uses the config-file keys.
/// Returns `(all_passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (settings = None))]
fn verify(py: Python<'_>, settings: Option<Vec<(String, String)>>) -> PyResult<(bool, String)> {
    let mut cfg = RunConfig::default();
    for (k, v) in settings.unwrap_or_default() {
        cfg.set(&k, &v).map_err(err)?;
    }
    let report = py.detach(|| run_verification(&cfg)).map_err(err)?;
    Ok((report.all_passed(), report.to_json()))
}

/// Witness table for a seminorm pair along a sequence, as text.
#[pyfunction]
#[pyo3(signature = (pair, sequence, i = 1, j = 2, k_max = 4, n_to = 6))]
fn witness(pair: &str, sequence: &str, i: usize, j: usize, k_max: usize, n_to: usize) -> PyResult<String> {
    let req = WitnessRequest {
        pair: pair.to_string(),
        sequence: sequence.to_string(),
        i,
        j,
        k_max,
        n_to,
        ..Default::default()
    };
    run_witness(&req).map(|w| w.to_text()).map_err(err)
}

#[pymodule]
fn pyinfpow(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("InfpowError", m.py().get_type::<InfpowError>())?;
    m.add_class::<PyTensor>()?;
    m.add_class::<PyComm>()?;
    m.add_class::<PyExt>()?;
    m.add_class::<PyPsiMatrix>()?;
    m.add_function(wrap_pyfunction!(psi_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(check_statements, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    Ok(())
}
