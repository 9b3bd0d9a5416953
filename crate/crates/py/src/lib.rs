use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qtk_core::emit::{self, Renderer, TableKind};
use qtk_core::qmink::{self, Gauge, NCPolynomial};
use qtk_core::replib::{build_twist, TwistFamily};
use qtk_core::report::CheckReport;
use qtk_core::scalars::{parse_scalar, Bindings, RationalFunction};
use qtk_core::suite::{run_suite as core_run_suite, RunConfig, Suite};
use qtk_core::{spindirac, QtkError};

fn err(e: QtkError) -> PyErr {
    match e {
        QtkError::Parse { .. } | QtkError::Unsupported(_) | QtkError::UnsupportedRep(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn bindings(params: Option<Vec<String>>) -> PyResult<Bindings> {
    params.unwrap_or_default().iter().map(|kv| emit::parse_param(kv).map_err(err)).collect()
}

fn gauge(name: &str) -> PyResult<Gauge> {
    Gauge::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown gauge '{name}'")))
}

fn rows(m: &qtk_core::matrix::Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Exact rational function in `r, s, xi, t` with Gaussian-rational coefficients.
#[pyclass(name = "Scalar", module = "qtk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScalar(RationalFunction);

#[pymethods]
impl PyScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_scalar(text).map(PyScalar).map_err(err)
    }

    fn __add__(&self, o: &PyScalar) -> PyScalar {
        PyScalar(self.0.add_ref(&o.0))
    }

    fn __sub__(&self, o: &PyScalar) -> PyScalar {
        PyScalar(self.0.sub_ref(&o.0))
    }

    fn __mul__(&self, o: &PyScalar) -> PyScalar {
        PyScalar(self.0.mul_ref(&o.0))
    }

    fn __truediv__(&self, o: &PyScalar) -> PyResult<PyScalar> {
        self.0.div_ref(&o.0).map(PyScalar).map_err(err)
    }

    fn __neg__(&self) -> PyScalar {
        PyScalar(self.0.neg_ref())
    }

    fn __eq__(&self, o: &PyScalar) -> bool {
        self.0 == o.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0)
    }

    /// Substitute `key=value` bindings such as `["r=1"]`.
    fn substitute(&self, params: Vec<String>) -> PyResult<PyScalar> {
        self.0.substitute(&bindings(Some(params))?).map(PyScalar).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Normal-ordered element of the twisted phase-space algebra.
#[pyclass(name = "Poly", module = "qtk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly(NCPolynomial);

fn index(mu: usize) -> PyResult<usize> {
    if (1..=4).contains(&mu) {
        Ok(mu)
    } else {
        Err(PyValueError::new_err(format!("index {mu} outside 1..4")))
    }
}

#[pymethods]
impl PyPoly {
    #[staticmethod]
    fn z(mu: usize) -> PyResult<PyPoly> {
        Ok(PyPoly(NCPolynomial::z(index(mu)?)))
    }

    #[staticmethod]
    fn p(mu: usize) -> PyResult<PyPoly> {
        Ok(PyPoly(NCPolynomial::p(index(mu)?)))
    }

    #[staticmethod]
    fn d(mu: usize) -> PyResult<PyPoly> {
        Ok(PyPoly(NCPolynomial::d(index(mu)?)))
    }

    #[staticmethod]
    fn m() -> PyPoly {
        PyPoly(NCPolynomial::m())
    }

    #[staticmethod]
    fn constant(c: &PyScalar) -> PyPoly {
        PyPoly(NCPolynomial::constant(c.0.clone()))
    }

    /// Twisted product; `gauge` is `paper` or `symmetric-footnote`.
    #[pyo3(signature = (other, gauge = "paper"))]
    fn star(&self, other: &PyPoly, gauge: &str) -> PyResult<PyPoly> {
        self.0.star_in(&other.0, self::gauge(gauge)?).map(PyPoly).map_err(err)
    }

    /// Commutative product, the `r = 1` reference.
    fn classical_mul(&self, other: &PyPoly) -> PyPoly {
        PyPoly(self.0.classical_mul(&other.0))
    }

    fn scale(&self, c: &PyScalar) -> PyPoly {
        PyPoly(self.0.scale(&c.0))
    }

    fn __add__(&self, o: &PyPoly) -> PyPoly {
        PyPoly(self.0.add_ref(&o.0))
    }

    fn __sub__(&self, o: &PyPoly) -> PyPoly {
        PyPoly(self.0.sub_ref(&o.0))
    }

    fn __eq__(&self, o: &PyPoly) -> bool {
        self.0 == o.0
    }

    fn substitute(&self, params: Vec<String>) -> PyResult<PyPoly> {
        self.0.substitute(&bindings(Some(params))?).map(PyPoly).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(h1, h2)` if homogeneous.
    fn bigrade(&self) -> Option<(i32, i32)> {
        self.0.bigrade().map(|b| (b.0, b.1))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// Result of one verification.
#[pyclass(name = "Check", module = "qtk", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyCheck {
    check: String,
    status: String,
    witness: Option<String>,
    detail: Option<String>,
}

impl From<CheckReport> for PyCheck {
    fn from(r: CheckReport) -> Self {
        let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        PyCheck { check: r.check, status, witness: r.witness, detail: r.detail }
    }
}

#[pymethods]
impl PyCheck {
    fn passed(&self) -> bool {
        self.status == "pass"
    }

    fn __repr__(&self) -> String {
        format!("Check({:?}, {}, witness={:?})", self.check, self.status, self.witness)
    }
}

/// Run suites and return the canonical JSON report.
#[pyfunction]
#[pyo3(signature = (suites = "all", order = 6, degree = 6, gauge = "paper", strict = false))]
fn run_suite(py: Python<'_>, suites: &str, order: usize, degree: u32, gauge: &str, strict: bool) -> PyResult<String> {
    let cfg = RunConfig {
        suites: Suite::parse_list(suites).map_err(err)?,
        order,
        degree,
        gauge: self::gauge(gauge)?,
        strict,
        ..RunConfig::default()
    };
    let report = py.detach(|| core_run_suite(&cfg)).map_err(err)?;
    Ok(emit::canonical_json(&report.to_json()))
}

/// Table artifact as canonical JSON.
#[pyfunction]
#[pyo3(signature = (what, gauge = "paper", params = None))]
fn tables(what: &str, gauge: &str, params: Option<Vec<String>>) -> PyResult<String> {
    let kind = TableKind::from_name(what).ok_or_else(|| PyValueError::new_err(format!("unknown table '{what}'")))?;
    let v = emit::emit_tables(kind, self::gauge(gauge)?, &Renderer::new(bindings(params)?)).map_err(err)?;
    Ok(emit::canonical_json(&v))
}

fn family(name: &str) -> PyResult<TwistFamily> {
    serde_json::from_value(serde_json::json!(name)).map_err(|_| PyValueError::new_err(format!("unsupported twist family '{name}'")))
}

/// Twist artifact as canonical JSON.
#[pyfunction]
#[pyo3(signature = (family, spins = None, order = 6, params = None))]
fn twist(family: &str, spins: Option<Vec<String>>, order: usize, params: Option<Vec<String>>) -> PyResult<String> {
    let v = emit::emit_twist(self::family(family)?, &spins.unwrap_or_default(), order, &Renderer::new(bindings(params)?)).map_err(err)?;
    Ok(emit::canonical_json(&v))
}

/// Cocycle condition of a twist family on the triple tensor power of one rep.
#[pyfunction]
fn cocycle_check(family: &str, spin: &str) -> PyResult<PyCheck> {
    let f = self::family(family)?;
    let v = emit::rep_for(f, spin).map_err(err)?;
    build_twist(f).cocycle_check_rep(&v, &v, &v).map(PyCheck::from).map_err(err)
}

/// Exchange tables `(a, b)` as scalar strings.
#[pyfunction]
#[pyo3(signature = (gauge = "paper"))]
fn exchange_tables(gauge: &str) -> PyResult<(Vec<Vec<String>>, Vec<Vec<String>>)> {
    let (a, b) = qmink::exchange_tables(self::gauge(gauge)?).map_err(err)?;
    Ok((qmink::table_strings(&a), qmink::table_strings(&b)))
}

/// Matrix of the twisted gamma `γ̃^μ` in the spinor representation.
#[pyfunction]
fn twisted_gamma(mu: usize) -> PyResult<Vec<Vec<String>>> {
    Ok(rows(&spindirac::twisted_gamma(index(mu)?)))
}

#[pyfunction]
fn dirac_checks(py: Python<'_>, degree: u32) -> PyResult<Vec<PyCheck>> {
    let r = py.detach(|| spindirac::dirac_checks(degree)).map_err(err)?;
    Ok(r.into_iter().map(PyCheck::from).collect())
}

#[pymodule]
fn qtk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyCheck>()?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(tables, m)?)?;
    m.add_function(wrap_pyfunction!(twist, m)?)?;
    m.add_function(wrap_pyfunction!(cocycle_check, m)?)?;
    m.add_function(wrap_pyfunction!(exchange_tables, m)?)?;
    m.add_function(wrap_pyfunction!(twisted_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_checks, m)?)?;
    Ok(())
}
