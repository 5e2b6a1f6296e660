use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use ::quadsum as core;
use core::descent::builtin_rules;
use core::forms::RepConstraint;
use core::genus::{aut_size, is_equivalent, neighbor_class_set, reduce};
use core::verify::{full_suite, verify_all_tuples, verify_lemmas, FixtureDatabase, SuiteParams};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serializes through Python's `json` so callers get plain dicts and lists.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn constraint(c: Option<&str>) -> PyResult<RepConstraint> {
    c.map_or_else(|| Ok(RepConstraint::none()), |s| s.parse().map_err(err))
}

fn pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> PyResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(pool.install(f))
}

/// Positive definite integral ternary form
/// `a11 x² + a22 y² + a33 z² + a23 yz + a13 xz + a12 xy`.
#[pyclass(name = "TernaryForm", module = "quadsum", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTernaryForm(core::forms::TernaryForm);

#[pymethods]
impl PyTernaryForm {
    #[new]
    #[pyo3(signature = (a11, a22, a33, a23 = 0, a13 = 0, a12 = 0))]
    fn new(a11: i64, a22: i64, a33: i64, a23: i64, a13: i64, a12: i64) -> PyResult<Self> {
        core::forms::TernaryForm::new(a11, a22, a33, a23, a13, a12).map(Self).map_err(err)
    }

    /// Parses `"diag(1,5,10)"` or `"a11,a22,a33,a23,a13,a12"`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(err)
    }

    #[getter]
    fn coefficients(&self) -> [i64; 6] {
        let f = &self.0;
        [f.a11, f.a22, f.a33, f.a23, f.a13, f.a12]
    }

    fn evaluate(&self, x: i64, y: i64, z: i64) -> i128 {
        self.0.evaluate([x, y, z])
    }

    fn determinant(&self) -> i128 {
        self.0.determinant()
    }

    fn gram(&self) -> [[i128; 3]; 3] {
        self.0.gram()
    }

    #[pyo3(signature = (n, constraint = None))]
    fn representations(&self, n: i64, constraint: Option<&str>) -> PyResult<Vec<[i64; 3]>> {
        let c = self::constraint(constraint)?;
        Ok(core::forms::representations(&self.0, n, &c).iter().map(|r| r.coords()).collect())
    }

    #[pyo3(signature = (n, constraint = None))]
    fn count(&self, n: i64, constraint: Option<&str>) -> PyResult<u64> {
        Ok(core::forms::count(&self.0, n, &self::constraint(constraint)?))
    }

    /// Canonical representative of the class.
    fn reduced(&self) -> Self {
        Self(reduce(&self.0).form)
    }

    fn is_equivalent(&self, other: &Self) -> bool {
        is_equivalent(&self.0, &other.0).is_some()
    }

    fn aut_size(&self) -> u64 {
        aut_size(&self.0)
    }

    /// Class representatives of the genus reached by neighbor steps at `primes`.
    fn genus(&self, primes: Vec<i64>) -> PyResult<Vec<Self>> {
        let cs = neighbor_class_set(&self.0, &primes).map_err(err)?;
        Ok(cs.forms().into_iter().map(Self).collect())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TernaryForm('{}')", self.0)
    }
}

/// `x(ax+b)/2 + y(cy+d)/2 + z(ez+f)/2`.
#[pyclass(name = "SumTuple", module = "quadsum", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySumTuple(core::tuples::SumTuple);

#[pymethods]
impl PySumTuple {
    #[new]
    fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> PyResult<Self> {
        core::tuples::SumTuple::new(a, b, c, d, e, f).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(err)
    }

    fn as_tuple(&self) -> [i64; 6] {
        self.0.as_array()
    }

    fn evaluate(&self, x: i64, y: i64, z: i64) -> PyResult<i64> {
        self.0.evaluate([x, y, z]).map_err(err)
    }

    fn witness(&self, n: u64) -> PyResult<Option<[i64; 3]>> {
        core::tuples::is_representable(&self.0, n).map_err(err)
    }

    /// Integers `≤ limit` the sum misses.
    #[pyo3(signature = (limit, jobs = 0))]
    fn exceptions(&self, py: Python<'_>, limit: u64, jobs: usize) -> PyResult<Vec<u64>> {
        let t = self.0;
        let r = py.detach(|| pool(jobs, || core::tuples::verify_universal(&t, limit, jobs.max(1))))?;
        Ok(r.map_err(err)?.exceptions)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SumTuple('{}')", self.0)
    }
}

#[pyfunction]
fn exception_set(a: u64, b: u64, c: u64, limit: u64) -> PyResult<Vec<u64>> {
    Ok(core::forms::exception_set(a, b, c, limit).map_err(err)?.members)
}

/// Whether the sieve agrees with the closed form of `name` (e.g. `"E1510"`) up to `limit`.
#[pyfunction]
fn exception_formula_holds(name: &str, limit: u64) -> PyResult<bool> {
    Ok(core::forms::exception_formula_check(name, limit).map_err(err)?.equal)
}

#[pyfunction]
fn kronecker_symbol(a: i64, n: i64) -> PyResult<i8> {
    core::forms::kronecker_symbol(a, n).map_err(err)
}

#[pyfunction]
fn rule_ids() -> Vec<String> {
    builtin_rules().rules().iter().map(|r| r.id.clone()).collect()
}

#[pyfunction]
#[pyo3(signature = (rule, vector, divisor = 1))]
fn apply_rule(rule: &str, vector: Vec<i64>, divisor: i64) -> PyResult<Vec<i64>> {
    builtin_rules().get(rule).map_err(err)?.apply_divided(&vector, divisor).map_err(err)
}

/// Odd descent under `x² + 5y² + 10z²`; returns the trace as a dict.
#[pyfunction]
fn descend_odd_1_5_10<'py>(py: Python<'py>, x: i64, y: i64, z: i64) -> PyResult<Bound<'py, PyAny>> {
    let form = core::forms::TernaryForm::diag(1, 5, 10).map_err(err)?;
    let w = form.evaluate([x, y, z]) as i64;
    let start = core::forms::Representation { x, y, z, value: w };
    to_py(py, &core::descent::descend_odd_1_5_10(w, &start).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (form, m, p, closure_primes))]
fn ratio_check<'py>(
    py: Python<'py>,
    form: &PyTernaryForm,
    m: i64,
    p: i64,
    closure_primes: Vec<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    let cs = neighbor_class_set(&form.0, &closure_primes).map_err(err)?;
    to_py(py, &core::genus::ratio_check(&cs, m, p).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (limit, jobs = 0))]
fn verify_theorems<'py>(py: Python<'py>, limit: u64, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| pool(jobs, || verify_all_tuples(FixtureDatabase::builtin(), limit, jobs.max(1))))?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (limit, jobs = 0))]
fn verify_lemmas_report<'py>(py: Python<'py>, limit: u64, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| pool(jobs, || verify_lemmas(limit, jobs.max(1))))?;
    to_py(py, &r)
}

/// Every check at its default bounds, with the tuple and lemma limits overridable.
#[pyfunction]
#[pyo3(signature = (tuple_limit = None, lemma_limit = None, jobs = 0))]
fn full_report<'py>(
    py: Python<'py>,
    tuple_limit: Option<u64>,
    lemma_limit: Option<u64>,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let mut p = SuiteParams {
        jobs: jobs.max(1),
        ..SuiteParams::default()
    };
    p.tuple_limit = tuple_limit.unwrap_or(p.tuple_limit);
    p.lemma_limit = lemma_limit.unwrap_or(p.lemma_limit);
    let r = py.detach(|| pool(jobs, || full_suite(FixtureDatabase::builtin(), &p, None).without_timing()))?;
    to_py(py, &r)
}

#[pymodule]
fn quadsum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", core::VERSION)?;
    m.add_class::<PyTernaryForm>()?;
    m.add_class::<PySumTuple>()?;
    m.add_function(wrap_pyfunction!(exception_set, m)?)?;
    m.add_function(wrap_pyfunction!(exception_formula_holds, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(rule_ids, m)?)?;
    m.add_function(wrap_pyfunction!(apply_rule, m)?)?;
    m.add_function(wrap_pyfunction!(descend_odd_1_5_10, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorems, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemmas_report, m)?)?;
    m.add_function(wrap_pyfunction!(full_report, m)?)?;
    Ok(())
}
