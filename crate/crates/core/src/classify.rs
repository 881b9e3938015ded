//! Cohen-Macaulay, Buchsbaum and Gorenstein* verdicts read from
//! `H•(D(Re_∅))` and `H•(ω•)`, and the Möbius function of `Σ̂` computed from
//! compactly supported cohomology of open stars.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cellcomplex::{CellComplex, Region, EMPTY};
use crate::dualize::{build_omega, compact_cohomology, dualize_module};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Betti;
use crate::repalg::RModule;
use crate::report::CohomologyTable;

/// A nonzero cohomology entry that breaks a vanishing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: i32,
    pub cell: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

fn structure_sheaf_dual<F: Field>(field: &F, c: &CellComplex) -> Result<CohomologyTable> {
    let r = RModule::projective(field, c.poset_arc(), EMPTY);
    Ok(dualize_module(c, &r)?.cohomology_table())
}

fn vanishing(c: &CellComplex, table: &CohomologyTable, skip_empty: bool) -> Verdict {
    let d = c.max_dim();
    let witnesses: Vec<Witness> = table
        .entries()
        .into_iter()
        .filter(|&(i, s, _)| i != -d && !(skip_empty && s == EMPTY))
        .map(|(degree, s, dim)| Witness {
            degree,
            cell: c.label(s).to_string(),
            dim,
        })
        .collect();
    Verdict {
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// `H^i(D(Re_∅)) = 0` for all `i ≠ -d`.
pub fn is_cohen_macaulay<F: Field>(field: &F, c: &CellComplex) -> Result<Verdict> {
    Ok(vanishing(c, &structure_sheaf_dual(field, c)?, false))
}

/// `H^i(D(Re_∅))_σ = 0` for all `i ≠ -d` and `σ ≠ ∅`: the empty cell is
/// invisible to the sheaf `D(Re_∅)†`.
pub fn is_buchsbaum<F: Field>(field: &F, c: &CellComplex) -> Result<Verdict> {
    Ok(vanishing(c, &structure_sheaf_dual(field, c)?, true))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinCertificate {
    pub holds: bool,
    /// `H•(D(Re_∅))` lives in degree `-d` only.
    pub concentrated: bool,
    /// `H^{-d}` has dimension 1 at every cell.
    pub all_ones: bool,
    /// `H^{-d}` is generated by its component at `∅`.
    pub generated_at_empty: bool,
    /// The link criterion, for simplicial complexes.
    pub link_oracle: Option<bool>,
}

/// `D(Re_∅) ≅ Re_∅[d]`, certified by concentration plus a cyclic module
/// generated at `∅` with all dimensions 1 (a quotient of `Re_∅` of the same
/// total dimension, hence equal to it).
pub fn is_gorenstein_star<F: Field>(field: &F, c: &CellComplex) -> Result<GorensteinCertificate> {
    let d = c.max_dim();
    let dr = dualize_module(c, &RModule::projective(field, c.poset_arc(), EMPTY))?;
    let table = dr.cohomology_table();
    let concentrated = table.degrees().all(|i| i == -d);
    let all_ones = table.row(-d).is_some_and(|r| r.iter().all(|&v| v == 1));
    let generated_at_empty = concentrated && all_ones && {
        let h = dr.materialize().cohomology_module(-d);
        (0..c.len()).all(|w| !h.act(EMPTY, w).is_zero())
    };
    let link_oracle = link_oracle_gorenstein_star(field, c);
    let holds = concentrated && all_ones && generated_at_empty;
    if let Some(o) = link_oracle {
        if o != holds {
            return Err(Error::Invariant(format!(
                "Gorenstein* verdict {holds} disagrees with the link criterion"
            )));
        }
    }
    Ok(GorensteinCertificate {
        holds,
        concentrated,
        all_ones,
        generated_at_empty,
        link_oracle,
    })
}

fn reduced_link_homology<F: Field>(field: &F, c: &CellComplex, s: usize) -> Option<Betti> {
    let lk = c.link(s).ok()?;
    c.cellular_homology(field, &Region::Closed(lk), false)
        .ok()
        .map(|h| h.reduced)
}

/// Every link is a homology sphere of the right dimension:
/// `H̃_i(lk σ) = k` for `i = d - dim σ - 1` and zero otherwise.
/// `None` for complexes that are not simplicial.
pub fn link_oracle_gorenstein_star<F: Field>(field: &F, c: &CellComplex) -> Option<bool> {
    if !c.is_simplicial() {
        return None;
    }
    let d = c.max_dim();
    let mut ok = true;
    for s in 0..c.len() {
        let h = reduced_link_homology(field, c, s)?;
        let expect = Betti::from([(d - c.dim(s) - 1, 1)]);
        ok &= h == expect;
    }
    Some(ok)
}

/// Reisner's criterion: `H̃_i(lk σ) = 0` for `i < d - dim σ - 1`.
pub fn link_oracle_cohen_macaulay<F: Field>(field: &F, c: &CellComplex) -> Option<bool> {
    if !c.is_simplicial() {
        return None;
    }
    let d = c.max_dim();
    let mut ok = true;
    for s in 0..c.len() {
        let h = reduced_link_homology(field, c, s)?;
        ok &= h.keys().all(|&i| i >= d - c.dim(s) - 1);
    }
    Some(ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaConcentration {
    /// `H^i(ω•) = 0` for `i ≠ -d` in every component `(τ, ρ)`.
    pub module_level: bool,
    /// The same, ignoring components with `τ = ∅`.
    pub sheaf_level: bool,
    /// Offending `(i, τ, ρ, dim)`.
    pub witnesses: Vec<(i32, String, String, usize)>,
}

pub fn omega_concentration<F: Field>(field: &F, c: &CellComplex) -> OmegaConcentration {
    let d = c.max_dim();
    let w = build_omega(field, c);
    let bad: Vec<(i32, usize, usize, usize)> = w
        .cohomology_entries()
        .into_iter()
        .filter(|&(i, ..)| i != -d)
        .collect();
    OmegaConcentration {
        module_level: bad.is_empty(),
        sheaf_level: bad.iter().all(|&(_, tau, ..)| tau == EMPTY),
        witnesses: bad
            .into_iter()
            .map(|(i, t, r, v)| (i, c.label(t).to_string(), c.label(r).to_string(), v))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    /// `μ(σ, 1̂)` from `H•_c(U_σ)`, and `χ̃(X)` at `∅`.
    pub cohomological: BTreeMap<String, i64>,
    /// `μ(σ, 1̂)` by the recursion on `Σ̂`.
    pub recursive: BTreeMap<String, i64>,
    pub agree: bool,
}

/// `μ(σ, 1̂) = Σ_{i >= dim σ} (-1)^{i - dim σ + 1} dim H^i_c(U_σ; k)` for
/// `σ ≠ ∅` and `μ(∅, 1̂) = χ̃(X)`, against the recursive values.
pub fn mobius_hat<F: Field>(field: &F, c: &CellComplex) -> Result<MobiusTable> {
    let hat = c.poset().adjoin_top();
    let top = hat.len() - 1;
    let r = RModule::projective(field, c.poset_arc(), EMPTY);
    let mut cohomological = BTreeMap::new();
    let mut recursive = BTreeMap::new();
    for s in 0..c.len() {
        let value = if s == EMPTY {
            let h = c.cellular_homology(field, &Region::Closed(c.whole()), false)?;
            h.reduced
                .iter()
                .map(|(&i, &v)| {
                    if i.rem_euclid(2) == 0 {
                        v as i64
                    } else {
                        -(v as i64)
                    }
                })
                .sum()
        } else {
            let j = c.dim(s);
            compact_cohomology(&r, &c.open_star(s)?)?
                .iter()
                .filter(|(&i, _)| i >= j)
                .map(|(&i, &v)| {
                    if (i - j + 1).rem_euclid(2) == 0 {
                        v as i64
                    } else {
                        -(v as i64)
                    }
                })
                .sum()
        };
        cohomological.insert(c.label(s).to_string(), value);
        recursive.insert(c.label(s).to_string(), hat.mobius(s, top)?);
    }
    let agree = cohomological == recursive;
    Ok(MobiusTable {
        cohomological,
        recursive,
        agree,
    })
}

/// Pairs `τ <= σ` where `μ(τ, σ) ≠ (-1)^{dim σ - dim τ}`; empty on every
/// valid complex.
pub fn mobius_cells(c: &CellComplex) -> Vec<(String, String)> {
    let p = c.poset();
    let mut bad = Vec::new();
    for t in 0..c.len() {
        let row = p.mobius_row(t);
        for s in p.above(t).ones() {
            let expect = if (c.dim(s) - c.dim(t)).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            if row[s] != expect {
                bad.push((c.label(t).to_string(), c.label(s).to_string()));
            }
        }
    }
    bad
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub field: String,
    pub cm: Verdict,
    pub buchsbaum: Verdict,
    pub gorenstein_star: GorensteinCertificate,
    pub mobius: MobiusTable,
}

pub fn classify<F: Field>(field: &F, c: &CellComplex) -> Result<ClassifyReport> {
    Ok(ClassifyReport {
        field: field.spec().to_string(),
        cm: is_cohen_macaulay(field, c)?,
        buchsbaum: is_buchsbaum(field, c)?,
        gorenstein_star: is_gorenstein_star(field, c)?,
        mobius: mobius_hat(field, c)?,
    })
}

impl ClassifyReport {
    pub fn to_json(&self) -> Value {
        let mut witnesses: Vec<Value> = Vec::new();
        for (kind, v) in [("cm", &self.cm), ("buchsbaum", &self.buchsbaum)] {
            for w in &v.witnesses {
                witnesses.push(
                    json!({"condition": kind, "degree": w.degree, "cell": w.cell, "dim": w.dim}),
                );
            }
        }
        json!({
            "field": self.field,
            "cm": self.cm.holds,
            "buchsbaum": self.buchsbaum.holds,
            "gorenstein_star": self.gorenstein_star.holds,
            "mobius": self.mobius.cohomological,
            "mobius_agree": self.mobius.agree,
            "witnesses": witnesses,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::fixtures;

    #[test]
    fn circle_is_gorenstein_star() {
        let t = fixtures::triangle_boundary();
        assert!(is_cohen_macaulay(&Rationals, &t).unwrap().holds);
        assert!(is_buchsbaum(&Rationals, &t).unwrap().holds);
        let g = is_gorenstein_star(&Rationals, &t).unwrap();
        assert!(g.holds);
        assert_eq!(g.link_oracle, Some(true));
    }

    #[test]
    fn disc_is_cm_but_not_gorenstein_star() {
        let s = fixtures::simplex2();
        assert!(is_cohen_macaulay(&Rationals, &s).unwrap().holds);
        let g = is_gorenstein_star(&Rationals, &s).unwrap();
        assert!(!g.holds);
        assert_eq!(g.link_oracle, Some(false));
        assert!(
            is_cohen_macaulay(&Rationals, &fixtures::disc2())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn rp2_depends_on_the_field() {
        let c = fixtures::rp2();
        let f2 = PrimeField::new(2).unwrap();
        assert!(is_cohen_macaulay(&Rationals, &c).unwrap().holds);
        let cm2 = is_cohen_macaulay(&f2, &c).unwrap();
        assert!(!cm2.holds);
        assert!(cm2.witnesses.iter().all(|w| w.cell == "@empty"));
        assert!(is_buchsbaum(&f2, &c).unwrap().holds);
        assert!(!is_gorenstein_star(&f2, &c).unwrap().holds);
        assert_eq!(link_oracle_cohen_macaulay(&f2, &c), Some(false));
        assert_eq!(link_oracle_cohen_macaulay(&Rationals, &c), Some(true));
    }

    #[test]
    fn omega_pins() {
        let t = fixtures::triangle_boundary();
        let o = omega_concentration(&Rationals, &t);
        assert!(o.module_level && o.sheaf_level);
        let d = fixtures::disc2();
        let o = omega_concentration(&Rationals, &d);
        assert!(!o.module_level);
        assert!(o.witnesses.contains(&(-1, "rho1".into(), "rho2".into(), 1)));
    }

    #[test]
    fn mobius_pins() {
        let t = fixtures::triangle_boundary();
        let m = mobius_hat(&Rationals, &t).unwrap();
        assert!(m.agree);
        assert_eq!(m.cohomological["1"], 1);
        assert_eq!(m.cohomological["1-2"], -1);
        assert_eq!(m.cohomological["@empty"], -1);
        let d = fixtures::disc2();
        let m = mobius_hat(&Rationals, &d).unwrap();
        assert!(m.agree);
        for b in ["rho1", "rho2", "tau1", "tau2"] {
            assert_eq!(m.cohomological[b], 0);
        }
        assert_eq!(m.cohomological["sigma"], -1);
        assert_eq!(
            mobius_hat(&Rationals, &fixtures::simplex2())
                .unwrap()
                .cohomological["@empty"],
            0
        );
        for named in fixtures::all() {
            assert!(mobius_cells(&named.complex).is_empty());
        }
    }
}
