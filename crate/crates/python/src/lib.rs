//! Python bindings. Values cross the boundary in the same JSON shapes the
//! CLI uses: square classes as ints, rationals as ints, `"a/b"` strings or
//! `fractions.Fraction`, cohomology classes as `{"degree": component}` dicts.

use std::collections::BTreeMap;

use cohinv::arith::{hilbert_symbol, Place, Rational, SquareClass};
use cohinv::composition::{AlgebraElement, CompositionAlgebra, Pfister};
use cohinv::forms::{diagonalize, QuadraticForm};
use cohinv::harness::{self, collision};
use cohinv::jordan::ReducedJordanAlgebra;
use cohinv::serial::{self, FromJson, ToJson};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::IntoPyDict;
use serde_json::Value;

fn err(e: cohinv::Error) -> PyErr {
    match e {
        cohinv::Error::UnknownSuite(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_value(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let py = obj.py();
    let kwargs = [("default", py.import("builtins")?.getattr("str")?)].into_py_dict(py)?;
    let text: String = py
        .import("json")?
        .call_method("dumps", (obj,), Some(&kwargs))?
        .extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn parse<T: FromJson>(obj: &Bound<'_, PyAny>, field: &str) -> PyResult<T> {
    T::from_json(&to_value(obj)?, field).map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.to_string(),))
}

fn slots(obj: &Bound<'_, PyAny>, field: &str) -> PyResult<Vec<SquareClass>> {
    serial::slots_from_json(&to_value(obj)?, field).map_err(err)
}

fn place(s: &str) -> PyResult<Place> {
    Place::from_json(&Value::from(s), "place").map_err(err)
}

/// Hilbert symbol (a, b)_v, with v a prime or `"inf"`.
#[pyfunction]
fn hilbert(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, v: &Bound<'_, PyAny>) -> PyResult<i8> {
    let a: SquareClass = parse(a, "a")?;
    let b: SquareClass = parse(b, "b")?;
    let v = match v.extract::<u64>() {
        Ok(p) => place(&p.to_string())?,
        Err(_) => place(&v.extract::<String>()?)?,
    };
    Ok(hilbert_symbol(&a, &b, v))
}

#[pyclass(name = "QuadraticForm", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyForm(QuadraticForm);

#[pymethods]
impl PyForm {
    #[new]
    fn new(entries: &Bound<'_, PyAny>) -> PyResult<Self> {
        parse(entries, "form").map(PyForm)
    }

    /// Diagonalizes a symmetric Gram matrix.
    #[staticmethod]
    fn from_gram(gram: &Bound<'_, PyAny>) -> PyResult<Self> {
        let g = serial::gram_from_json(&to_value(gram)?, "gram").map_err(err)?;
        diagonalize(&g).map(PyForm).map_err(err)
    }

    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.to_json())
    }

    fn __len__(&self) -> usize {
        self.0.dim()
    }

    fn __repr__(&self) -> String {
        format!("QuadraticForm({})", self.0.to_json())
    }

    fn det<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.det().to_json())
    }

    fn signature(&self) -> (usize, usize) {
        self.0.signature()
    }

    fn hasse(&self, v: &str) -> PyResult<i8> {
        Ok(self.0.hasse(place(v)?))
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.invariants().to_json())
    }

    /// Stiefel-Whitney class w_i.
    fn sw<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.sw(i).to_json())
    }

    fn total_sw<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &serial::classes_to_json(&self.0.total_sw()))
    }

    fn isometric(&self, other: &PyForm) -> bool {
        self.0.isometric(&other.0)
    }

    fn isotropic(&self) -> bool {
        self.0.isotropic()
    }

    fn represents(&self, lambda: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.represents(&parse(lambda, "lambda")?))
    }

    fn orthogonal_sum(&self, other: &PyForm) -> Self {
        PyForm(self.0.orthogonal_sum(&other.0))
    }

    fn tensor(&self, other: &PyForm) -> Self {
        PyForm(self.0.tensor(&other.0))
    }

    fn scale(&self, lambda: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyForm(self.0.scale(&parse(lambda, "lambda")?)))
    }

    fn lambda_square(&self) -> PyResult<Self> {
        self.0.lambda_square().map(PyForm).map_err(err)
    }

    fn normalize_det1(&self) -> PyResult<Self> {
        self.0.normalize_det1().map(PyForm).map_err(err)
    }

    fn simple_phi_step(&self, i: usize, lambda: &Bound<'_, PyAny>, phi: &PyForm) -> PyResult<Self> {
        self.0
            .simple_phi_step(i, &parse(lambda, "lambda")?, &phi.0)
            .map(PyForm)
            .map_err(err)
    }
}

#[pyclass(name = "Pfister", frozen)]
struct PyPfister(Pfister);

#[pymethods]
impl PyPfister {
    #[new]
    fn new(mus: &Bound<'_, PyAny>) -> PyResult<Self> {
        let mus = slots(mus, "mus")?;
        Pfister::new(mus).map(PyPfister).map_err(err)
    }

    fn form(&self) -> PyForm {
        PyForm(self.0.form())
    }

    fn e_invariant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.e_invariant().to_json())
    }

    fn is_hyperbolic(&self) -> bool {
        self.0.is_hyperbolic()
    }
}

#[pyclass(name = "CompositionAlgebra", frozen)]
struct PyComposition(CompositionAlgebra);

impl PyComposition {
    fn element(&self, x: &Bound<'_, PyAny>, field: &str) -> PyResult<AlgebraElement> {
        parse(x, field)
    }

    fn coords<'py>(&self, py: Python<'py>, x: &AlgebraElement) -> PyResult<Vec<Bound<'py, PyAny>>> {
        x.coords.iter().map(|c| fraction(py, c)).collect()
    }
}

#[pymethods]
impl PyComposition {
    #[new]
    fn new(mus: &Bound<'_, PyAny>) -> PyResult<Self> {
        let mus = slots(mus, "mus")?;
        CompositionAlgebra::new(mus).map(PyComposition).map_err(err)
    }

    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn multiply<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'_, PyAny>,
        y: &Bound<'_, PyAny>,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let xy = self
            .0
            .multiply(&self.element(x, "x")?, &self.element(y, "y")?)
            .map_err(err)?;
        self.coords(py, &xy)
    }

    fn conj<'py>(&self, py: Python<'py>, x: &Bound<'_, PyAny>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let c = self.0.conj(&self.element(x, "x")?).map_err(err)?;
        self.coords(py, &c)
    }

    fn norm<'py>(&self, py: Python<'py>, x: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let n = self.0.norm(&self.element(x, "x")?).map_err(err)?;
        fraction(py, &n)
    }

    fn norm_form(&self) -> PyForm {
        PyForm(self.0.norm_form())
    }

    fn is_split(&self) -> bool {
        self.0.is_split()
    }
}

#[pyclass(name = "JordanAlgebra", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyJordan(ReducedJordanAlgebra);

#[pymethods]
impl PyJordan {
    #[new]
    fn new(mu: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<Self> {
        let mu = slots(mu, "mu")?;
        let q: QuadraticForm = parse(q, "q")?;
        ReducedJordanAlgebra::new(mu.len(), mu, q)
            .map(PyJordan)
            .map_err(err)
    }

    /// Accepts the CLI's `{"r":..,"mu":[..],"q":[..]}` object, as a dict or a string.
    #[staticmethod]
    fn from_json(data: &Bound<'_, PyAny>) -> PyResult<Self> {
        let v = match data.extract::<String>() {
            Ok(s) => return serial::parse_json(&s, "algebra").map(PyJordan).map_err(err),
            Err(_) => to_value(data)?,
        };
        ReducedJordanAlgebra::from_json(&v, "algebra")
            .map(PyJordan)
            .map_err(err)
    }

    #[staticmethod]
    fn split(r: usize, n: usize) -> PyResult<Self> {
        ReducedJordanAlgebra::split(r, n).map(PyJordan).map_err(err)
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.to_json())
    }

    fn __repr__(&self) -> String {
        format!("JordanAlgebra({})", self.0.to_json())
    }

    #[getter]
    fn r(&self) -> usize {
        self.0.r()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `[{"v": i, "degree": d, "class": {...}}, ...]`
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &serial::invariants_to_json(&self.0))
    }

    fn is_isomorphic(&self, other: &PyJordan) -> PyResult<bool> {
        self.0.is_isomorphic(&other.0).map_err(err)
    }

    fn trace_form(&self) -> PyForm {
        PyForm(self.0.trace_form_formula())
    }

    /// Gram matrix of the trace form on the hermitian basis, as rational strings.
    fn trace_gram<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &serial::gram_to_json(&self.0.trace_gram_oracle()))
    }
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    harness::suite_names()
}

/// Runs a property suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (name, seed = 0, params = None))]
fn run_suite<'py>(
    py: Python<'py>,
    name: &str,
    seed: u64,
    params: Option<BTreeMap<String, u64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let params = params.unwrap_or_default();
    let report = py
        .detach(|| harness::run_suite(name, seed, &params))
        .map_err(err)?;
    let mut v = report.to_json();
    v["elapsed"] = Value::from(report.elapsed.as_secs_f64());
    to_py(py, &v)
}

/// Exhaustive collision search; returns summary counts and certificates.
#[pyfunction]
fn collision_search<'py>(
    py: Python<'py>,
    r: usize,
    n: usize,
    bound: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let s = py
        .detach(|| collision::collision_search_with_stats(r, n, bound))
        .map_err(err)?;
    let certs: Vec<Value> = s.certificates.iter().map(|c| c.to_json()).collect();
    let v = serde_json::json!({
        "forms": s.forms_searched,
        "classes": s.classes,
        "groups": s.groups,
        "certificates": certs,
    });
    to_py(py, &v)
}

/// Cup product of two classes in dict form.
#[pyfunction]
fn cup<'py>(
    py: Python<'py>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let a: cohinv::cohomology::CohomClass = parse(a, "a")?;
    let b: cohinv::cohomology::CohomClass = parse(b, "b")?;
    to_py(py, &a.cup(&b).to_json())
}

/// The symbol (a_1)∪…∪(a_k).
#[pyfunction]
fn symbol<'py>(py: Python<'py>, classes: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let cs = slots(classes, "classes")?;
    to_py(py, &cohinv::cohomology::symbol(&cs).to_json())
}

#[pymodule]
#[pyo3(name = "pycohinv")]
pub fn pycohinv_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForm>()?;
    m.add_class::<PyPfister>()?;
    m.add_class::<PyComposition>()?;
    m.add_class::<PyJordan>()?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(cup, m)?)?;
    m.add_function(wrap_pyfunction!(symbol, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(collision_search, m)?)?;
    Ok(())
}
