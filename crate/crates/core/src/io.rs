//! Text formats: facet files, poset JSON files and filter specs.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::cellcomplex::{CellComplex, OrderFilter};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub id: String,
    pub dim: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignEntry {
    pub upper: String,
    pub lower: String,
    pub sign: i64,
}

/// A face poset with dimensions, covers `[lower, upper]` and optional signs.
/// The empty cell is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub cells: Vec<CellEntry>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<SignEntry>>,
}

pub fn parse_poset_json(text: &str) -> Result<PosetFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("poset file: {e}")))
}

/// One facet per line, vertices separated by whitespace, `#` starts a
/// comment. Blank lines are skipped.
pub fn parse_facets(text: &str) -> Result<Vec<Vec<String>>> {
    let facets: Vec<Vec<String>> = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .filter(|line| !line.trim().is_empty())
        .map(|line| line.split_whitespace().map(str::to_string).collect())
        .collect();
    if facets.is_empty() {
        return Err(Error::EmptyInput("facet file has no facets"));
    }
    Ok(facets)
}

/// Reads a complex from either format: JSON when the first non-blank
/// character is `{`, a facet list otherwise.
pub fn parse_complex(text: &str) -> Result<CellComplex> {
    if text.trim_start().starts_with('{') {
        CellComplex::from_poset_file(&parse_poset_json(text)?)
    } else {
        CellComplex::from_facets(&parse_facets(text)?)
    }
}

/// Comma-separated cell ids. Without `closure` the set must already be an
/// order filter; with it the upward closure is taken.
pub fn parse_filter(complex: &CellComplex, spec: &str, closure: bool) -> Result<OrderFilter> {
    let mut set = FixedBitSet::with_capacity(complex.len());
    let mut any = false;
    for part in spec.split(',') {
        let id = part.trim();
        if id.is_empty() {
            continue;
        }
        set.insert(complex.require(id)?);
        any = true;
    }
    if !any {
        return Err(Error::EmptyInput("filter lists no cells"));
    }
    if closure {
        complex.filter_closure(&set)
    } else {
        complex.filter(&set)
    }
}
