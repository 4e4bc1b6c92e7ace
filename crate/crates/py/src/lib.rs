//! Python module `pysogkit`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sogkit::cli::{input_error_outcome, parse_str, run_command, Invocation, VERBS};
use sogkit::fgab::{self, FgAbGroup, IntMatrix, Subgroup};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Run a verb on a `sogkit/1` JSON document. Returns `(exit_code, certificate_json)`.
#[pyfunction]
#[pyo3(signature = (verb, document, target=None, with_=Vec::new(), oracle=false, budget=None))]
fn run(
    verb: &str,
    document: &str,
    target: Option<String>,
    with_: Vec<String>,
    oracle: bool,
    budget: Option<usize>,
) -> (i32, String) {
    let outcome = match parse_str(document) {
        Ok(ws) => run_command(&ws, &Invocation { verb: verb.to_string(), target, with: with_, oracle, budget }),
        Err(e) => input_error_outcome(verb, &e),
    };
    (outcome.code, outcome.render())
}

/// Smith form of an integer matrix: `(u, d, v)` with `u * a * v == d`.
#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<BigInt>>) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let a = IntMatrix::from_rows(&rows).map_err(value_error)?;
    let s = fgab::smith_normal_form(&a);
    Ok((s.u.to_rows(), s.d.to_rows(), s.v.to_rows()))
}

fn subgroup(g: &FgAbGroup, gens: Vec<Vec<BigInt>>) -> PyResult<Subgroup> {
    Subgroup::new(g, gens).map_err(value_error)
}

/// Whether `<a>` is pure in `<b>` inside the group with the given cyclic
/// orders (0 for an infinite cyclic factor).
#[pyfunction]
fn is_pure(orders: Vec<BigInt>, a: Vec<Vec<BigInt>>, b: Vec<Vec<BigInt>>) -> PyResult<bool> {
    let g = FgAbGroup::from_cyclic_factors(&orders);
    fgab::is_pure(&subgroup(&g, a)?, &subgroup(&g, b)?).map_err(value_error)
}

/// Invariant factors of the group with the given relation rows.
#[pyfunction]
fn invariant_factors(rank: usize, relations: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    let rel = if relations.is_empty() {
        IntMatrix::zeros(rank, 0)
    } else {
        IntMatrix::from_rows(&relations).map_err(value_error)?.transpose()
    };
    Ok(FgAbGroup::from_relations(rank, rel).map_err(value_error)?.invariant_factors())
}

#[pymodule]
fn pysogkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("VERBS", VERBS.to_vec())?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(is_pure, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_factors, m)?)?;
    Ok(())
}
