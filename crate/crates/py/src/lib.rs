//! Python bindings for the nsic toolkit.
//!
//! The module mirrors the CLI surface: pair classification, the exact
//! stabilizer oracle, recurrence witnesses, weight distributions, the
//! weight-predicate audit, and density tables.  All functions are
//! deterministic; budget overruns raise `RuntimeError`, invalid inputs
//! raise `ValueError`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nsic_core::agree::agree_sweep;
use nsic_core::classifier;
use nsic_core::cycliccode::irreducible_code_of_pair;
use nsic_core::density as density_mod;
use nsic_core::numtheory::{self, FieldDesc};
use nsic_core::oracle;
use nsic_core::schmidtwhite;
use nsic_core::{Budgets, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Infeasible(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field(p: u64, e: u64) -> PyResult<FieldDesc> {
    FieldDesc::new(p, e).map_err(to_py)
}

fn prime_power(v: u64) -> PyResult<FieldDesc> {
    let f = numtheory::factor(v);
    match f.factors.as_slice() {
        [(p, e)] => field(*p, *e as u64),
        _ => Err(PyValueError::new_err(format!("{v} is not a prime power"))),
    }
}

fn budgets(nodes: Option<u64>, steps: Option<u64>) -> Budgets {
    let mut b = Budgets::default();
    if let Some(n) = nodes {
        b.oracle_nodes = n;
    }
    if let Some(s) = steps {
        b.lrs_steps = s;
    }
    b
}

/// Verdict for the pair (n, p^e): "standard" or "nonstandard".
#[pyfunction]
fn classify(n: u64, p: u64, e: u64) -> PyResult<String> {
    let c = classifier::classify(n, field(p, e)?).map_err(to_py)?;
    Ok(if c.is_nonstandard() { "nonstandard" } else { "standard" }.into())
}

/// Full classification record as a JSON string (verdict, m, n0, n1, and
/// the derivation tree for non-standard pairs).
#[pyfunction]
fn classify_json(n: u64, p: u64, e: u64) -> PyResult<String> {
    let c = classifier::classify(n, field(p, e)?).map_err(to_py)?;
    Ok(c.to_json().to_string())
}

/// Every minimal derivation of a non-standard pair, as JSON strings.
/// Empty list for standard pairs.
#[pyfunction]
fn derivations(n: u64, p: u64, e: u64) -> PyResult<Vec<String>> {
    let all = classifier::classify_exhaustive(n, field(p, e)?).map_err(to_py)?;
    Ok(all.iter().map(|d| d.to_json()).collect())
}

/// Exact order of the linear stabilizer L(n, q), by backtracking search.
#[pyfunction]
#[pyo3(signature = (n, p, e, budget_nodes=None))]
fn oracle_order(n: u64, p: u64, e: u64, budget_nodes: Option<u64>) -> PyResult<u64> {
    let b = budgets(budget_nodes, None);
    let r = oracle::linear_stabilizer(n, field(p, e)?, &b).map_err(to_py)?;
    Ok(r.order)
}

/// Stabilizer oracle record as a JSON string (order, standard order,
/// verdict, node count).
#[pyfunction]
#[pyo3(signature = (n, p, e, budget_nodes=None))]
fn oracle_json(n: u64, p: u64, e: u64, budget_nodes: Option<u64>) -> PyResult<String> {
    let b = budgets(budget_nodes, None);
    let r = oracle::linear_stabilizer(n, field(p, e)?, &b).map_err(to_py)?;
    Ok(r.to_json().to_string())
}

/// True iff a non-cyclic recurrence arrangement exists for the pair.
#[pyfunction]
#[pyo3(signature = (n, p, e, budget_steps=None))]
fn lrs_nonstandard(n: u64, p: u64, e: u64, budget_steps: Option<u64>) -> PyResult<bool> {
    let b = budgets(None, budget_steps);
    let w = oracle::lrs_witness(n, field(p, e)?, &b).map_err(to_py)?;
    Ok(w.is_some())
}

/// Weight distribution of the irreducible cyclic code of the pair, as a
/// dict mapping weight to codeword count.
#[pyfunction]
fn weights(n: u64, p: u64, e: u64) -> PyResult<BTreeMap<u64, u64>> {
    let b = Budgets::default();
    let code = irreducible_code_of_pair(n, field(p, e)?, &b).map_err(to_py)?;
    let dist = code.weight_distribution(&b).map_err(to_py)?;
    Ok(dist.counts)
}

/// Non-standard pair density for F_{p^i} up to n_max, as
/// (numerator, denominator, rendered_ratio).
#[pyfunction]
fn density(p: u64, i: u64, n_max: u64) -> PyResult<(u64, u64, String)> {
    let row = density_mod::density(p, i, n_max).map_err(to_py)?;
    let ratio = row.ratio_decimal(row.default_precision());
    Ok((row.numerator, row.denominator, ratio))
}

/// Density table over the given exponents and bounds, as CSV.
#[pyfunction]
fn density_csv(p: u64, exps: Vec<u64>, bounds: Vec<u64>) -> PyResult<String> {
    let t = density_mod::density_table(p, &exps, &bounds).map_err(to_py)?;
    Ok(t.to_csv())
}

/// Weight-predicate audit over non-standard pairs with q^m <= qm_limit,
/// as CSV.  qs are prime powers.
#[pyfunction]
fn sw_audit_csv(qs: Vec<u64>, qm_limit: u64) -> PyResult<String> {
    let fields: Vec<FieldDesc> =
        qs.into_iter().map(prime_power).collect::<PyResult<_>>()?;
    let report =
        schmidtwhite::sw_audit(&fields, qm_limit, &Budgets::default()).map_err(to_py)?;
    Ok(report.to_csv())
}

/// Wreath-order formula check for degenerate pairs n = nprime * k, as CSV.
#[pyfunction]
fn deg_check_csv(nprime: u64, k: u64, p: u64, e: u64) -> PyResult<String> {
    let c = oracle::degenerate_order_check(nprime, k, field(p, e)?, &Budgets::default())
        .map_err(to_py)?;
    Ok(c.to_csv())
}

/// Three-way classifier/oracle/witness agreement sweep, as CSV.  qs are
/// prime powers; pairs with q^m <= qm_limit are covered.
#[pyfunction]
#[pyo3(signature = (qs, qm_limit, budget_nodes=None, budget_steps=None))]
fn agree_csv(
    qs: Vec<u64>,
    qm_limit: u64,
    budget_nodes: Option<u64>,
    budget_steps: Option<u64>,
) -> PyResult<String> {
    let fields: Vec<FieldDesc> =
        qs.into_iter().map(prime_power).collect::<PyResult<_>>()?;
    let b = budgets(budget_nodes, budget_steps);
    let report = agree_sweep(&fields, qm_limit, &b).map_err(to_py)?;
    Ok(report.to_csv())
}

/// Multiplicative order of p^e modulo n (the dimension of the code).
#[pyfunction]
fn mult_ord(n: u64, p: u64, e: u64) -> PyResult<u64> {
    numtheory::mult_ord(n, field(p, e)?).map_err(to_py)
}

#[pymodule]
fn nsic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(classify_json, m)?)?;
    m.add_function(wrap_pyfunction!(derivations, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_order, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_json, m)?)?;
    m.add_function(wrap_pyfunction!(lrs_nonstandard, m)?)?;
    m.add_function(wrap_pyfunction!(weights, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(density_csv, m)?)?;
    m.add_function(wrap_pyfunction!(sw_audit_csv, m)?)?;
    m.add_function(wrap_pyfunction!(deg_check_csv, m)?)?;
    m.add_function(wrap_pyfunction!(agree_csv, m)?)?;
    m.add_function(wrap_pyfunction!(mult_ord, m)?)?;
    Ok(())
}
