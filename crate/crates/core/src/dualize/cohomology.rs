//! Local, sheaf, compactly supported and open-set cohomology.
//!
//! Modules here live on face posets, where the empty cell is the bottom
//! element [`EMPTY`].

use crate::cellcomplex::{CellComplex, OrderFilter, EMPTY};
use crate::error::{Error, Result};
use crate::field::{sign, Field};
use crate::linalg::{Betti, Matrix, VectorComplex};
use crate::repalg::module::same_poset;
use crate::repalg::{min_injective_resolution, RModule};

use super::duality::{dualize_complex, dualize_module, ext_against_omega};

fn shift(b: &Betti, by: i32) -> Betti {
    b.iter().map(|(&d, &v)| (d + by, v)).collect()
}

fn get(b: &Betti, d: i32) -> usize {
    b.get(&d).copied().unwrap_or(0)
}

/// `dim H^i_∅(M) = dim Ext^i_R(k, M)`: apply `Γ_∅ = Hom_R(k, -)` to a
/// minimal injective resolution. `Hom(k, E(σ))` is `k` for `σ = ∅` and zero
/// otherwise, so only the `E(∅)` summands survive.
pub fn local_cohomology<F: Field>(m: &RModule<F>) -> Betti {
    min_injective_resolution(m)
        .restricted(|g| g == EMPTY)
        .cohomology()
}

/// `dim H^i(X, M†)`: `H^{i+1}_∅(M)` for `i >= 1`, and `H^0` from
/// `0 -> H^0_∅(M) -> M_∅ -> H^0(X, M†) -> H^1_∅(M) -> 0`.
pub fn sheaf_cohomology<F: Field>(m: &RModule<F>) -> Betti {
    let h = local_cohomology(m);
    let mut out = Betti::new();
    let h0 = m.dim(EMPTY) + get(&h, 1) - get(&h, 0);
    if h0 > 0 {
        out.insert(0, h0);
    }
    for (&d, &v) in &h {
        if d >= 2 {
            out.insert(d - 1, v);
        }
    }
    out
}

/// The cellular cochain model restricted to `cells`:
/// `C^i = ⊕_{dim σ = i} M_σ` with `x ↦ Σ_{τ ⋗ σ} ε(τ, σ) e_{τ,σ} x`.
fn cellular_model<F: Field>(
    c: &CellComplex,
    m: &RModule<F>,
    keep: impl Fn(usize) -> bool,
) -> VectorComplex<F> {
    let f = m.field();
    let d = c.max_dim().max(0);
    let per: Vec<Vec<usize>> = (0..=d)
        .map(|i| {
            c.cells_of_dim(i)
                .iter()
                .copied()
                .filter(|&s| keep(s))
                .collect()
        })
        .collect();
    let sizes: Vec<Vec<usize>> = per
        .iter()
        .map(|v| v.iter().map(|&s| m.dim(s)).collect())
        .collect();
    let offsets = |k: usize| -> Vec<usize> {
        sizes[k]
            .iter()
            .scan(0, |acc, &x| {
                let o = *acc;
                *acc += x;
                Some(o)
            })
            .collect()
    };
    let diffs = (0..per.len() - 1)
        .map(|k| {
            let (os, ot) = (offsets(k), offsets(k + 1));
            let mut out = Matrix::zeros(f, sizes[k + 1].iter().sum(), sizes[k].iter().sum());
            for (j, &s) in per[k].iter().enumerate() {
                for (i, &t) in per[k + 1].iter().enumerate() {
                    let e = c.eps(t, s);
                    if e == 0 || m.dim(s) == 0 || m.dim(t) == 0 {
                        continue;
                    }
                    out.put_block(ot[i], os[j], &m.cover_map(s, t).scale(&sign(f, e)));
                }
            }
            out
        })
        .collect();
    let dims = sizes.iter().map(|s| s.iter().sum()).collect();
    VectorComplex::new_unchecked(f, 0, dims, diffs).expect("cellular model shapes")
}

/// `H^i(X, M†)` from the cellular cochain model, an independent route.
pub fn cellular_sheaf_cohomology<F: Field>(c: &CellComplex, m: &RModule<F>) -> Betti {
    cellular_model(c, m, |s| s != EMPTY).cohomology()
}

/// `H^i_c(U_Ψ, M†)` from the cellular model on the cells of `Ψ`.
pub fn cellular_compact_cohomology<F: Field>(
    c: &CellComplex,
    m: &RModule<F>,
    psi: &OrderFilter,
) -> Betti {
    cellular_model(c, m, |s| psi.contains(s)).cohomology()
}

/// `dim H^i_c(U_Ψ, M†|U_Ψ) = dim H^{i+1}_∅(M_Ψ)`, for every `i >= 0`.
pub fn compact_cohomology<F: Field>(m: &RModule<F>, psi: &OrderFilter) -> Result<Betti> {
    if psi.contains(EMPTY) {
        return Err(Error::EmptyCellInFilter);
    }
    let h = local_cohomology(&m.sub_filter(psi.cells())?);
    Ok(shift(&h, -1))
}

/// `dim H^i(U_Ψ, M†|U_Ψ) = dim [Ext^i_R(D(M)_Ψ, ω•)]_∅`: dualize, keep the
/// filter part of every term, dualize again and read the empty cell.
pub fn open_cohomology<F: Field>(
    c: &CellComplex,
    m: &RModule<F>,
    psi: &OrderFilter,
) -> Result<Betti> {
    if psi.contains(EMPTY) {
        return Err(Error::EmptyCellInFilter);
    }
    let dm = dualize_module(c, m)?
        .materialize()
        .sub_filter(psi.cells())?;
    Ok(dualize_complex(c, &dm)?.cohomology_at(EMPTY))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuslanderReport {
    /// `-max{dim σ | M_σ ≠ 0}`.
    pub j_omega: i32,
    /// Smallest `i` with `Ext^i_R(M, ω•) ≠ 0`.
    pub first_nonzero: Option<i32>,
    /// `Ext^i(M, ω•)_σ = 0` whenever `dim σ > -i`, and the first
    /// nonvanishing degree is `j_omega`.
    pub holds: bool,
}

pub fn auslander_report<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<AuslanderReport> {
    if !same_poset(m.poset(), c.poset_arc()) {
        return Err(Error::PosetMismatch);
    }
    let top = (0..c.len())
        .filter(|&s| m.dim(s) > 0)
        .map(|s| c.dim(s))
        .max()
        .ok_or(Error::ZeroModule)?;
    let table = ext_against_omega(c, m)?;
    let first_nonzero = table.degrees().next();
    let vanishing = table.entries().iter().all(|&(i, s, _)| c.dim(s) <= -i);
    Ok(AuslanderReport {
        j_omega: -top,
        first_nonzero,
        holds: vanishing && first_nonzero == Some(-top),
    })
}
