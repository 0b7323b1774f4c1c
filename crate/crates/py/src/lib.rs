//! Python bindings. Structured results come back as JSON text in the same
//! schema the `mckay-lab` reports use; scalar queries return Python values.

use mckay::an::build_an_table;
use mckay::bounds::{sigma_bounds, BoundParams};
use mckay::classical::verify::{omega_identities, sp_exhaustive};
use mckay::classical::Kind;
use mckay::gf::FqMatrix;
use mckay::mckay::{mckay_row, Family, McKayGraph, McKayRow, SupportCache};
use mckay::partitions::{staircase_degree_check, Partition};
use mckay::sn::build_sn_table;
use mckay::Error;
use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn family(name: &str) -> mckay::Result<Family> {
    match name {
        "S" | "s" => Ok(Family::Symmetric),
        "A" | "a" => Ok(Family::Alternating),
        _ => Err(Error::invalid(format!("family must be \"S\" or \"A\", got {name:?}"))),
    }
}

fn kind(name: &str) -> mckay::Result<Kind> {
    match name {
        "sp" => Ok(Kind::Symplectic),
        "plus" => Ok(Kind::OrthogonalPlus),
        "minus" => Ok(Kind::OrthogonalMinus),
        "odd" => Ok(Kind::OrthogonalOdd),
        _ => Err(Error::invalid(format!("kind must be sp, plus, minus or odd, got {name:?}"))),
    }
}

fn json<T: serde::Serialize>(v: &T) -> mckay::Result<String> {
    Ok(serde_json::to_string(v)?)
}

pub fn table_json(family_name: &str, n: u32) -> mckay::Result<String> {
    match family(family_name)? {
        Family::Symmetric => json(&build_sn_table(n)?),
        Family::Alternating => json(&build_an_table(n)?),
    }
}

pub fn degrees(family_name: &str, n: u32) -> mckay::Result<Vec<(String, BigUint)>> {
    let t = family(family_name)?.compiled(n)?;
    Ok(t.labels.iter().cloned().zip(t.degrees().iter().cloned()).collect())
}

pub fn mckay_rows(family_name: &str, n: u32) -> mckay::Result<Vec<McKayRow>> {
    let t = family(family_name)?.compiled(n)?;
    let cache = SupportCache::build(&t)?;
    Ok((0..t.len())
        .filter(|&a| a != t.trivial())
        .map(|a| mckay_row(&t, n, &McKayGraph::from_cache(&cache, t.trivial(), a)))
        .collect())
}

pub fn diameter_of(family_name: &str, n: u32, alpha: &str) -> mckay::Result<Option<u32>> {
    let t = family(family_name)?.compiled(n)?;
    let a = t
        .labels
        .iter()
        .position(|l| l == alpha)
        .ok_or_else(|| Error::invalid(format!("no character labelled {alpha}")))?;
    Ok(McKayGraph::build(&t, a)?.diameter().finite())
}

pub fn support_of(literal: &str) -> mckay::Result<usize> {
    literal.parse::<FqMatrix>()?.support()
}

fn to_py(e: Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

/// Character table of `S_n` (`family="S"`) or `A_n` (`family="A"`) as JSON.
#[pyfunction]
fn character_table(family: &str, n: u32) -> PyResult<String> {
    table_json(family, n).map_err(to_py)
}

/// `[(label, degree), ...]` for every irreducible character.
#[pyfunction]
fn character_degrees(family: &str, n: u32) -> PyResult<Vec<(String, BigUint)>> {
    degrees(family, n).map_err(to_py)
}

/// McKay graph rows for every nontrivial character, as JSON.
#[pyfunction]
fn mckay_table(family: &str, n: u32) -> PyResult<String> {
    mckay_rows(family, n).and_then(|r| json(&r)).map_err(to_py)
}

/// Directed McKay diameter for one character; `None` when infinite.
#[pyfunction]
fn diameter(family: &str, n: u32, alpha: &str) -> PyResult<Option<u32>> {
    diameter_of(family, n, alpha).map_err(to_py)
}

/// Dimension of the irreducible `S_n` character labelled by `parts`.
#[pyfunction]
fn partition_dimension(parts: Vec<u32>) -> PyResult<BigUint> {
    Partition::new(parts).map(|p| p.dimension()).map_err(to_py)
}

/// `dim(staircase(m))^11 >= (n!)^5`.
#[pyfunction]
fn staircase_holds(m: u32) -> PyResult<bool> {
    staircase_degree_check(m).map(|r| r.holds).map_err(to_py)
}

/// `supp(g)` for a matrix literal `q=<q>:row/row/...`.
#[pyfunction]
fn support(matrix: &str) -> PyResult<usize> {
    support_of(matrix).map_err(to_py)
}

/// Steinberg-sum report for dimension `n`, field size `q` and `v` (0 or 1), as JSON.
#[pyfunction]
fn steinberg_sums(n: u32, q: u32, v: u32) -> PyResult<String> {
    BoundParams::new(n, q, v).and_then(|p| json(&sigma_bounds(&p))).map_err(to_py)
}

/// Exhaustive Weil-character checks on `Sp_2n(q)`, as JSON.
#[pyfunction]
fn symplectic_exhaustive(n: usize, q: u32) -> PyResult<String> {
    sp_exhaustive(n, q).and_then(|r| json(&r)).map_err(to_py)
}

/// Sampled decomposition identities on `Ω^±_2n(q)`, as JSON.
#[pyfunction]
#[pyo3(signature = (kind, n, q, samples = 1000, seed = 0))]
fn orthogonal_identities(kind: &str, n: usize, q: u32, samples: usize, seed: u64) -> PyResult<String> {
    self::kind(kind)
        .and_then(|k| omega_identities(k, n, q, samples, seed))
        .and_then(|r| json(&r))
        .map_err(to_py)
}

#[pymodule]
fn mckay_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(character_table, m)?)?;
    m.add_function(wrap_pyfunction!(character_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(mckay_table, m)?)?;
    m.add_function(wrap_pyfunction!(diameter, m)?)?;
    m.add_function(wrap_pyfunction!(partition_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(staircase_holds, m)?)?;
    m.add_function(wrap_pyfunction!(support, m)?)?;
    m.add_function(wrap_pyfunction!(steinberg_sums, m)?)?;
    m.add_function(wrap_pyfunction!(symplectic_exhaustive, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonal_identities, m)?)?;
    Ok(())
}
