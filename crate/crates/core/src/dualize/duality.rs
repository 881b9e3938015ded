//! `D(M•)` as an explicit complex of injectives.
//!
//! For a module `M`, `D^i(M) = ⊕_{dim σ = -i} E(σ) ⊗ (M_σ)^∨` and the
//! differential sends `E(σ) ⊗ M_σ^∨` to `E(σ') ⊗ M_{σ'}^∨` for `σ' ⋖ σ` by
//! `ε(σ, σ')` times the transpose of `M(σ' -> σ)`. For a complex the total
//! complex takes `D(M^j)` in degrees shifted by `-j`, and the vertical part
//! `∂^∨` carries the sign `(-1)^t`, `t` the total degree of the source.

use std::collections::HashMap;

use crate::cellcomplex::CellComplex;
use crate::error::{Error, Result};
use crate::field::{sign, Field};
use crate::linalg::Matrix;
use crate::repalg::module::same_poset;
use crate::repalg::{ModuleComplex, RModule, SumComplex, SumKind};
use crate::report::CohomologyTable;

/// `D(M•)`. Its generators in total degree `t` are triples
/// `(σ, j, a)` with `t = -dim σ - j` and `a` a basis index of `M^j_σ`.
pub fn dualize_complex<F: Field>(c: &CellComplex, m: &ModuleComplex<F>) -> Result<SumComplex<F>> {
    if !same_poset(m.poset(), c.poset_arc()) {
        return Err(Error::PosetMismatch);
    }
    let f = m.field();
    let (a, b) = (m.min_degree(), m.max_degree());
    let lo = -c.max_dim().max(-1) - b;
    let hi = 1 - a;
    let slots = (hi - lo + 1) as usize;

    let mut gens: Vec<Vec<(usize, i32, usize)>> = vec![Vec::new(); slots];
    for j in a..=b {
        let mj = m.module(j).expect("in range");
        for s in 0..c.len() {
            let t = -c.dim(s) - j;
            for idx in 0..mj.dim(s) {
                gens[(t - lo) as usize].push((s, j, idx));
            }
        }
    }
    for g in &mut gens {
        g.sort_unstable();
    }
    let pos: HashMap<(usize, i32, usize), usize> = gens
        .iter()
        .flat_map(|g| g.iter().enumerate().map(|(i, &k)| (k, i)))
        .collect();

    let mut diffs = Vec::with_capacity(slots - 1);
    for k in 0..slots - 1 {
        let t = lo + k as i32;
        let mut d = Matrix::zeros(f, gens[k + 1].len(), gens[k].len());
        for (col, &(s, j, idx)) in gens[k].iter().enumerate() {
            let mj = m.module(j).expect("in range");
            for &s2 in c.poset().lower_covers(s) {
                let e = sign(f, c.eps(s, s2));
                let act = mj.cover_map(s2, s);
                for bi in 0..mj.dim(s2) {
                    let v = act.get(idx, bi);
                    if !f.is_zero(v) {
                        d.set(pos[&(s2, j, bi)], col, f.mul(&e, v));
                    }
                }
            }
            if j > a {
                let del = &m.diff(j - 1).expect("in range").maps[s];
                let sg = sign(f, if t.rem_euclid(2) == 0 { 1 } else { -1 });
                for bi in 0..del.cols() {
                    let v = del.get(idx, bi);
                    if !f.is_zero(v) {
                        d.set(pos[&(s, j - 1, bi)], col, f.mul(&sg, v));
                    }
                }
            }
        }
        diffs.push(d);
    }
    let cells = gens
        .into_iter()
        .map(|g| g.into_iter().map(|(s, _, _)| s).collect())
        .collect();
    SumComplex::new(f, c.poset_arc(), SumKind::Injective, lo, cells, diffs)
        .map_err(|e| Error::Invariant(format!("D(M) is not a complex: {e}")))
}

/// `D(M)` for a module placed in degree 0.
pub fn dualize_module<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<SumComplex<F>> {
    dualize_complex(c, &ModuleComplex::concentrated(m.clone(), 0))
}

/// `dim Ext^i_R(M, ω•)_σ = dim H^i(D(M))_σ`.
pub fn ext_against_omega<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<CohomologyTable> {
    Ok(dualize_module(c, m)?.cohomology_table())
}

pub fn ext_against_omega_complex<F: Field>(
    c: &CellComplex,
    m: &ModuleComplex<F>,
) -> Result<CohomologyTable> {
    Ok(dualize_complex(c, m)?.cohomology_table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcomplex::EMPTY;
    use crate::field::{PrimeField, Rationals};
    use crate::fixtures;
    use crate::repalg::random_module;

    #[test]
    fn dual_of_injectives_is_a_shifted_simple() {
        for named in fixtures::all() {
            let c = &named.complex;
            for s in 0..c.len() {
                let e = RModule::injective(&Rationals, c.poset_arc(), s);
                let t = ext_against_omega(c, &e).unwrap();
                let simple = RModule::simple(&Rationals, c.poset_arc(), s);
                assert_eq!(
                    t,
                    simple.dims_table(-c.dim(s)),
                    "{} at {}",
                    named.name,
                    c.label(s)
                );
            }
        }
    }

    #[test]
    fn dual_of_the_circle_structure_sheaf() {
        let t = fixtures::triangle_boundary();
        let r = RModule::projective(&Rationals, t.poset_arc(), EMPTY);
        let table = ext_against_omega(&t, &r).unwrap();
        assert_eq!(table, r.dims_table(-1));
    }

    #[test]
    fn dual_of_a_top_simple_on_the_disc() {
        let d = fixtures::disc2();
        let sigma = d.require("sigma").unwrap();
        let s = RModule::simple(&Rationals, d.poset_arc(), sigma);
        let e = RModule::injective(&Rationals, d.poset_arc(), sigma);
        assert_eq!(ext_against_omega(&d, &s).unwrap(), e.dims_table(-2));
    }

    #[test]
    fn zero_dualizes_to_zero() {
        let d = fixtures::disc2();
        let z = RModule::zero(&Rationals, d.poset_arc());
        assert!(dualize_module(&d, &z).unwrap().is_zero());
    }

    #[test]
    fn double_duality_on_random_modules() {
        let f = PrimeField::new(3).unwrap();
        for named in fixtures::all() {
            let c = &named.complex;
            for seed in 0..3 {
                let m = random_module(&f, c.poset_arc(), seed, 2);
                let dd = dualize_complex(c, &dualize_module(c, &m).unwrap().materialize()).unwrap();
                assert_eq!(
                    dd.cohomology_table(),
                    m.dims_table(0),
                    "{} seed {seed}",
                    named.name
                );
            }
        }
    }

    #[test]
    fn duality_is_internal_hom_into_the_dual_of_the_structure_sheaf() {
        let f = PrimeField::new(5).unwrap();
        for named in fixtures::all().into_iter().take(3) {
            let c = &named.complex;
            let dr = dualize_module(c, &RModule::projective(&f, c.poset_arc(), EMPTY))
                .unwrap()
                .materialize();
            for seed in 0..3 {
                let m = random_module(&f, c.poset_arc(), seed, 2);
                assert_eq!(
                    crate::repalg::u_hom_complex_table(&m, &dr).unwrap(),
                    ext_against_omega(c, &m).unwrap()
                );
            }
        }
    }

    #[test]
    fn other_posets_are_rejected() {
        let t = fixtures::triangle_boundary();
        let d = fixtures::disc2();
        let m = RModule::simple(&Rationals, d.poset_arc(), EMPTY);
        assert!(matches!(dualize_module(&t, &m), Err(Error::PosetMismatch)));
    }
}
