//! Python bindings: character tables, the icosahedral battery, smoothed sums
//! and a generic runner for scenario files.

use std::sync::Arc;

use galtrace::analytic::BumpKernel;
use galtrace::branching::{icosahedral_battery, run_query, IcosahedralContext};
use galtrace::chars::CharacterTable;
use galtrace::cli::{error_code, run_command};
use galtrace::groups::named_group;
use galtrace::sandbox::{smoothed_asymptotics, StreamSpec};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: galtrace::Error) -> PyErr {
    if error_code(&e) == 2 {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

/// Character table of a named group as `(class_labels, class_sizes, rows)`,
/// where `rows` maps each irreducible label to its exact values.
#[pyfunction]
fn character_table(name: &str) -> PyResult<(Vec<String>, Vec<usize>, Vec<(String, Vec<String>)>)> {
    let g = Arc::new(named_group(name).map_err(to_py)?);
    let t = CharacterTable::compute(&g).map_err(to_py)?;
    let classes = (0..g.num_classes()).map(|c| g.class_label(c).to_string()).collect();
    let sizes = (0..g.num_classes()).map(|c| g.class_size(c)).collect();
    let rows = (0..t.len()).map(|i| (t.label(i).to_string(), t.row(i).render())).collect();
    Ok((classes, sizes, rows))
}

/// Names and outcomes of the icosahedral branching identities.
#[pyfunction]
fn battery() -> PyResult<Vec<(String, bool)>> {
    let ctx = IcosahedralContext::new().map_err(to_py)?;
    Ok(icosahedral_battery(&ctx).map_err(to_py)?.into_iter().map(|c| (c.name, c.holds)).collect())
}

/// Evaluate a character expression such as `sym2(theta2)`; returns `(name, degree, irreducible)`.
#[pyfunction]
fn branch(expr: &str) -> PyResult<(String, i64, bool)> {
    let ctx = IcosahedralContext::new().map_err(to_py)?;
    let r = run_query(&ctx, expr).map_err(to_py)?;
    Ok((r.name, r.degree, r.irreducible))
}

/// Pole order and `(X, ratio)` pairs of the smoothed sum of `m * 1` against its residue term.
#[pyfunction]
#[pyo3(signature = (m, xs, seed=11, bound=1_000_000))]
fn smoothed_ratios(m: i64, xs: Vec<f64>, seed: u64, bound: u64) -> PyResult<(usize, Vec<(f64, f64)>)> {
    let (k, rows) = smoothed_asymptotics(m, &xs, StreamSpec { seed, bound }, &BumpKernel::default()).map_err(to_py)?;
    Ok((k, rows.into_iter().map(|r| (r.x, r.ratio)).collect()))
}

/// Run a CLI command on a scenario text; returns `(passed, tsv, json)`.
#[pyfunction]
fn run(command: &str, config: &str) -> PyResult<(bool, String, String)> {
    let doc = run_command(command, config, None).map_err(to_py)?;
    Ok((doc.pass, doc.to_tsv(), doc.to_json()))
}

#[pymodule]
fn galtrace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(character_table, m)?)?;
    m.add_function(wrap_pyfunction!(battery, m)?)?;
    m.add_function(wrap_pyfunction!(branch, m)?)?;
    m.add_function(wrap_pyfunction!(smoothed_ratios, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
