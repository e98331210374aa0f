//! Python bindings: `import trinom`.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use trinom::cli::SpecExpression;
use trinom::{DensePoly, Modulus, Provenance, QuadraticSpec, Residue, VerificationRecord};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn modulus(p: u64) -> PyResult<Modulus> {
    Modulus::new(p).map_err(value_err)
}

/// The quadratic 1 + a x + b x^2 selecting a sequence.
#[pyclass(name = "Spec", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PySpec(QuadraticSpec);

#[pymethods]
impl PySpec {
    #[new]
    fn new(a: i64, b: i64) -> PyResult<Self> {
        QuadraticSpec::new(a, b).map(PySpec).map_err(value_err)
    }

    #[staticmethod]
    fn trinomial() -> Self {
        PySpec(QuadraticSpec::trinomial())
    }

    #[staticmethod]
    fn delannoy() -> Self {
        PySpec(QuadraticSpec::delannoy())
    }

    /// Parses "trinomial", "delannoy" or "quad:a=<int>,b=<int>".
    #[staticmethod]
    fn parse(expr: &str) -> PyResult<Self> {
        expr.parse::<SpecExpression>()
            .map(|e| PySpec(e.0))
            .map_err(value_err)
    }

    #[getter]
    fn a(&self) -> i64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> i64 {
        self.0.b()
    }

    #[getter]
    fn name(&self) -> Option<&'static str> {
        self.0.name()
    }

    fn __repr__(&self) -> String {
        format!("Spec({})", self.0)
    }
}

#[pyclass(name = "Record", frozen, get_all)]
struct PyRecord {
    p: u64,
    tables_agree: bool,
    pattern: String,
    palindromic: bool,
    mirror_holds: bool,
    condition_value: u64,
    condition_ok: bool,
    degenerate_b: bool,
    violation: bool,
}

impl From<&VerificationRecord> for PyRecord {
    fn from(r: &VerificationRecord) -> Self {
        PyRecord {
            p: r.p,
            tables_agree: r.tables_agree,
            pattern: r.pattern.to_string(),
            palindromic: r.palindromic,
            mirror_holds: r.mirror_holds,
            condition_value: r.condition_value.value(),
            condition_ok: r.condition_ok,
            degenerate_b: r.degenerate_b,
            violation: r.is_violation(),
        }
    }
}

#[pymethods]
impl PyRecord {
    fn __repr__(&self) -> String {
        format!(
            "Record(p={}, pattern={:?}, palindromic={}, condition_ok={})",
            self.p,
            self.pattern,
            if self.palindromic { "True" } else { "False" },
            if self.condition_ok { "True" } else { "False" },
        )
    }
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    trinom::is_prime(n)
}

#[pyfunction]
fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    trinom::primes_in_range(lo, hi)
}

#[pyfunction]
fn exact_terms(spec: PySpec, count: usize) -> PyResult<Vec<num_bigint::BigInt>> {
    trinom::exact_terms(spec.0, count)
        .map(|s| s.terms)
        .map_err(value_err)
}

/// First p residues; route is "recurrence" or "poly_pow".
#[pyfunction]
#[pyo3(signature = (spec, p, route = "recurrence"))]
fn table(spec: PySpec, p: u64, route: &str) -> PyResult<Vec<u64>> {
    let m = modulus(p)?;
    let t = match route {
        "recurrence" => trinom::table_via_recurrence(spec.0, m),
        "poly_pow" => trinom::table_via_poly_pow(spec.0, m),
        other => return Err(PyValueError::new_err(format!("unknown route {other:?}"))),
    }
    .map_err(value_err)?;
    Ok(t.residues().to_vec())
}

#[pyfunction]
fn zero_pattern(spec: PySpec, p: u64) -> PyResult<String> {
    let t = trinom::cached_table(spec.0, modulus(p)?, Provenance::Recurrence).map_err(value_err)?;
    Ok(trinom::zero_pattern(&t).to_string())
}

#[pyfunction]
fn is_palindrome(pattern: &str) -> PyResult<bool> {
    let pattern = pattern.parse().map_err(PyValueError::new_err)?;
    Ok(trinom::is_palindrome(&pattern))
}

/// R_n mod p by base-p digit products; n may be any non-negative int.
#[pyfunction]
fn lucas_eval(spec: PySpec, p: u64, n: BigUint) -> PyResult<u64> {
    let t = trinom::cached_table(spec.0, modulus(p)?, Provenance::Recurrence).map_err(value_err)?;
    trinom::lucas_eval(&t, &n)
        .map(Residue::value)
        .map_err(value_err)
}

/// Returns (holds, first counterexample n or None).
#[pyfunction]
fn verify_lucas(spec: PySpec, p: u64, n_max: u64) -> PyResult<(bool, Option<u64>)> {
    let r = trinom::verify_lucas(spec.0, modulus(p)?, n_max).map_err(value_err)?;
    Ok((r.holds, r.counterexample.map(|c| c.n)))
}

#[pyfunction]
fn mirror_check(coeffs: Vec<u64>, b: u64, k: u64, p: u64) -> PyResult<bool> {
    let m = modulus(p)?;
    let poly = DensePoly::new(coeffs, m);
    trinom::mirror_check(&poly, Residue::new(b, m), k).map_err(value_err)
}

#[pyfunction]
fn lucas_condition(spec: PySpec, p: u64) -> PyResult<u64> {
    trinom::lucas_condition(spec.0, modulus(p)?)
        .map(Residue::value)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (spec, primes, jobs = 1))]
fn verify_theorem(
    py: Python<'_>,
    spec: PySpec,
    primes: Vec<u64>,
    jobs: usize,
) -> PyResult<Vec<PyRecord>> {
    let records = py
        .detach(|| trinom::verify_theorem(spec.0, &primes, jobs))
        .map_err(value_err)?;
    Ok(records.iter().map(PyRecord::from).collect())
}

/// Runs the command line with `args` (without program name).
/// Returns (exit_code, stdout, stderr).
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    py.detach(|| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("trinom".to_string()).chain(args);
        let code = trinom::cli::run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8_lossy(&out).into_owned(),
            String::from_utf8_lossy(&err).into_owned(),
        )
    })
}

#[pymodule]
#[pyo3(name = "trinom")]
fn trinom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpec>()?;
    m.add_class::<PyRecord>()?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(primes_in_range, m)?)?;
    m.add_function(wrap_pyfunction!(exact_terms, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(zero_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(is_palindrome, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_eval, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lucas, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_check, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_condition, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
