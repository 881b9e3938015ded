//! Degree-indexed dimension tables.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::linalg::Betti;

/// Dimensions `degree -> cell -> dim`. Rows that vanish identically are not
/// stored, so two tables compare equal exactly when all dimensions agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    labels: Vec<String>,
    rows: BTreeMap<i32, Vec<usize>>,
}

impl CohomologyTable {
    pub fn new(labels: Vec<String>) -> Self {
        CohomologyTable {
            labels,
            rows: BTreeMap::new(),
        }
    }

    /// A table with the single row `dims` at `degree`.
    pub fn concentrated(labels: Vec<String>, degree: i32, dims: Vec<usize>) -> Self {
        let mut t = Self::new(labels);
        t.set_row(degree, dims);
        t
    }

    pub fn set_row(&mut self, degree: i32, dims: Vec<usize>) {
        assert_eq!(dims.len(), self.labels.len());
        if dims.iter().any(|&d| d > 0) {
            self.rows.insert(degree, dims);
        } else {
            self.rows.remove(&degree);
        }
    }

    pub fn add(&mut self, degree: i32, cell: usize, dim: usize) {
        if dim == 0 {
            return;
        }
        let n = self.labels.len();
        self.rows.entry(degree).or_insert_with(|| vec![0; n])[cell] += dim;
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, degree: i32, cell: usize) -> usize {
        self.rows.get(&degree).map_or(0, |r| r[cell])
    }

    pub fn row(&self, degree: i32) -> Option<&[usize]> {
        self.rows.get(&degree).map(Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Dimensions at one cell across degrees.
    pub fn column(&self, cell: usize) -> Betti {
        self.rows
            .iter()
            .filter(|(_, r)| r[cell] > 0)
            .map(|(&d, r)| (d, r[cell]))
            .collect()
    }

    /// Every nonzero `(degree, cell, dim)`.
    pub fn entries(&self) -> Vec<(i32, usize, usize)> {
        let mut out = Vec::new();
        for (&d, r) in &self.rows {
            for (c, &v) in r.iter().enumerate() {
                if v > 0 {
                    out.push((d, c, v));
                }
            }
        }
        out
    }

    /// `{degree: {cell: dim}}` with zero cells omitted.
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        for (d, r) in &self.rows {
            let mut row = Map::new();
            for (c, &v) in r.iter().enumerate() {
                if v > 0 {
                    row.insert(self.labels[c].clone(), json!(v));
                }
            }
            out.insert(d.to_string(), Value::Object(row));
        }
        Value::Object(out)
    }

    /// Tab-separated `degree  cell  dim` lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("degree\tcell\tdim\n");
        for (d, c, v) in self.entries() {
            s.push_str(&format!("{d}\t{}\t{v}\n", self.labels[c]));
        }
        s
    }
}

pub fn betti_json(b: &Betti) -> Value {
    let mut m = Map::new();
    for (d, v) in b {
        m.insert(d.to_string(), json!(v));
    }
    Value::Object(m)
}

pub fn betti_tsv(b: &Betti) -> String {
    let mut s = String::from("degree\tdim\n");
    for (d, v) in b {
        s.push_str(&format!("{d}\t{v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rows_are_dropped() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let mut t = CohomologyTable::new(labels.clone());
        t.set_row(1, vec![0, 0]);
        assert!(t.is_zero());
        t.add(-1, 1, 2);
        assert_eq!(t.get(-1, 1), 2);
        assert_eq!(t, CohomologyTable::concentrated(labels, -1, vec![0, 2]));
        assert_eq!(t.to_json(), json!({"-1": {"b": 2}}));
        assert_eq!(t.column(1), Betti::from([(-1, 2)]));
    }
}
