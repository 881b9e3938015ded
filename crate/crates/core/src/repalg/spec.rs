//! Module specifications: a JSON presentation or a builtin name.
//!
//! ```text
//! {"dims": {"a": 1, "ab": 2}, "maps": {"a->ab": [[1], [0]]}}
//! projective:<cell>  injective:<cell>  simple:<cell>
//! ideal-J  module:Re-empty  random:<seed>
//! ```
//!
//! Cells missing from `dims` get dimension 0 and covers missing from `maps`
//! get the zero map.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::cellcomplex::{CellComplex, EMPTY};
use crate::error::{Error, Result};
use crate::field::{parse_entry, Field};
use crate::linalg::Matrix;

use super::module::RModule;
use super::random::random_module;

/// Largest accepted `dim M_x` in a JSON spec.
pub const MAX_MODULE_DIM: usize = 64;

/// Cell dimensions drawn by `random:<seed>` are at most this.
pub const RANDOM_MAX_DIM: usize = 3;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleSpec {
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<Value>>>,
}

/// `J`, the left ideal spanned by the `e_{τ,∅}` with `τ ≠ ∅`: the
/// constant module on the nonempty cells.
pub fn ideal_j<F: Field>(field: &F, complex: &CellComplex) -> RModule<F> {
    RModule::projective(field, complex.poset_arc(), EMPTY)
        .sub_filter(complex.punctured().cells())
        .expect("the nonempty cells form a filter")
}

pub fn parse_module<F: Field>(field: &F, complex: &CellComplex, spec: &str) -> Result<RModule<F>> {
    let spec = spec.trim();
    let p = complex.poset_arc();
    if spec.starts_with('{') {
        return parse_module_json(field, complex, spec);
    }
    if let Some(cell) = spec.strip_prefix("projective:") {
        return Ok(RModule::projective(field, p, complex.require(cell)?));
    }
    if let Some(cell) = spec.strip_prefix("injective:") {
        return Ok(RModule::injective(field, p, complex.require(cell)?));
    }
    if let Some(cell) = spec.strip_prefix("simple:") {
        return Ok(RModule::simple(field, p, complex.require(cell)?));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid seed `{seed}`")))?;
        return Ok(random_module(field, p, seed, RANDOM_MAX_DIM));
    }
    match spec {
        "ideal-J" => Ok(ideal_j(field, complex)),
        "module:Re-empty" => Ok(RModule::projective(field, p, EMPTY)),
        _ => Err(Error::Parse(format!("unknown module spec `{spec}`"))),
    }
}

/// Splits `lower->upper` where cell ids may themselves contain `-` or `>`:
/// exactly one split position may name two known cells.
fn split_cover(complex: &CellComplex, key: &str) -> Result<(usize, usize)> {
    let mut found = None;
    for (i, _) in key.match_indices("->") {
        let (l, u) = (&key[..i], &key[i + 2..]);
        if let (Some(l), Some(u)) = (complex.poset().index_of(l), complex.poset().index_of(u)) {
            if found.replace((l, u)).is_some() {
                return Err(Error::Parse(format!("ambiguous cover key `{key}`")));
            }
        }
    }
    found.ok_or_else(|| Error::Parse(format!("cover key `{key}` does not name two cells")))
}

fn entry<F: Field>(field: &F, v: &Value) -> Result<F::Elem> {
    match v {
        Value::Number(n) => parse_entry(field, &n.to_string()),
        Value::String(s) => parse_entry(field, s),
        other => Err(Error::Parse(format!(
            "matrix entry {other} is not a number"
        ))),
    }
}

fn parse_module_json<F: Field>(field: &F, complex: &CellComplex, text: &str) -> Result<RModule<F>> {
    let spec: ModuleSpec =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("module spec: {e}")))?;
    let p = complex.poset_arc();
    let mut dims = vec![0; p.len()];
    for (id, &d) in &spec.dims {
        if d > MAX_MODULE_DIM {
            return Err(Error::Parse(format!(
                "dimension {d} at {id} exceeds the limit {MAX_MODULE_DIM}"
            )));
        }
        dims[complex.require(id)?] = d;
    }
    let mut maps: Vec<Matrix<F>> = p
        .covers()
        .iter()
        .map(|&(l, u)| Matrix::zeros(field, dims[u], dims[l]))
        .collect();
    for (key, rows) in &spec.maps {
        let (l, u) = split_cover(complex, key)?;
        let k = p
            .cover_id(l, u)
            .ok_or_else(|| Error::Parse(format!("`{key}` is not a cover relation")))?;
        if rows.len() != dims[u] || rows.iter().any(|r| r.len() != dims[l]) {
            return Err(Error::Shape(format!(
                "map {key} must be {}x{}",
                dims[u], dims[l]
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                maps[k].set(r, c, entry(field, v)?);
            }
        }
    }
    RModule::new(field, p, dims, maps)
}
