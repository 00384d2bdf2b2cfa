use dilator_core::jfunctor::{j_eval, jplus_eval, jprime_eval};
use dilator_core::psi::psi_clause_otp;
use dilator_core::suites::{run_suite, SuiteOptions};
use dilator_core::{DilatorExpr, Error, Ordinal};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_pair(expr: &str, gamma: &str) -> PyResult<(DilatorExpr, Ordinal)> {
    let d = expr.parse::<DilatorExpr>().map_err(py_err)?;
    let g = gamma.parse::<Ordinal>().map_err(py_err)?;
    Ok((d, g))
}

/// `J(D)(gamma)` in Cantor normal form.
#[pyfunction]
#[pyo3(signature = (expr, gamma = "w"))]
fn jeval(expr: &str, gamma: &str) -> PyResult<String> {
    let (d, g) = parse_pair(expr, gamma)?;
    Ok(j_eval(&d, &g).map_err(py_err)?.value.to_string())
}

#[pyfunction]
#[pyo3(signature = (expr, gamma = "w"))]
fn jprime(expr: &str, gamma: &str) -> PyResult<String> {
    let (d, g) = parse_pair(expr, gamma)?;
    Ok(jprime_eval(&d, &g).map_err(py_err)?.value.to_string())
}

#[pyfunction]
#[pyo3(signature = (expr, gamma = "w"))]
fn jplus(expr: &str, gamma: &str) -> PyResult<String> {
    let (d, g) = parse_pair(expr, gamma)?;
    Ok(jplus_eval(&d, &g).map_err(py_err)?.value.to_string())
}

/// Order type of the collapse of `expr` over `gamma`.
#[pyfunction]
#[pyo3(signature = (expr, gamma = "w"))]
fn psi_otp(expr: &str, gamma: &str) -> PyResult<String> {
    let (d, g) = parse_pair(expr, gamma)?;
    Ok(psi_clause_otp(&d, &g).map_err(py_err)?.to_string())
}

/// Runs a named check suite and returns `(passed, instances)`.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0))]
fn check(suite: &str, seed: u64) -> PyResult<(bool, usize)> {
    let opts = SuiteOptions { seed, ..SuiteOptions::default() };
    let report = run_suite(suite, &opts).map_err(py_err)?;
    Ok((report.passed, report.instances))
}

/// Runs the command line with `args` (without the program name) and returns
/// `(exit_code, stdout)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String) {
    let argv = std::iter::once("dilator".to_string()).chain(args);
    let out = dilator_core::cli::run_args(argv);
    (out.code, out.stdout)
}

#[pymodule]
fn dilator(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(jeval, m)?)?;
    m.add_function(wrap_pyfunction!(jprime, m)?)?;
    m.add_function(wrap_pyfunction!(jplus, m)?)?;
    m.add_function(wrap_pyfunction!(psi_otp, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
