//! Executable identities between independent computations, used by the
//! `selftest` command. Each check returns `Ok(None)` on agreement and a
//! short description of the first disagreement otherwise.

use crate::cellcomplex::{CellComplex, EMPTY};
use crate::dualize::{
    cellular_sheaf_cohomology, compact_cohomology, dualize_complex, dualize_module,
    ext_against_omega, local_cohomology, sheaf_cohomology,
};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Betti;
use crate::repalg::{ideal_j, u_ext, u_hom_complex_table, RModule, Route};

pub type Outcome = Option<String>;

fn get(b: &Betti, d: i32) -> usize {
    b.get(&d).copied().unwrap_or(0)
}

/// `H•(D(D(M))) = M` in degree 0, with matching action ranks.
pub fn double_duality<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<Outcome> {
    let dd = dualize_complex(c, &dualize_module(c, m)?.materialize())?;
    if dd.cohomology_table() != m.dims_table(0) {
        return Ok(Some("H(DD(M)) differs from M".into()));
    }
    let h = dd.materialize().cohomology_module(0);
    let p = c.poset();
    for x in 0..c.len() {
        for y in p.above(x).ones() {
            if h.act(x, y).rank() != m.act(x, y).rank() {
                return Ok(Some(format!(
                    "action rank {} -> {} differs after double duality",
                    c.label(x),
                    c.label(y)
                )));
            }
        }
    }
    Ok(None)
}

/// `dim Ext^i(M, ω•)_∅ = dim H^{-i+1}_∅(M)`.
pub fn serre_duality<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<Outcome> {
    let ext = ext_against_omega(c, m)?.column(EMPTY);
    let local = local_cohomology(m);
    let lhs: Betti = ext.clone();
    let rhs: Betti = local.iter().map(|(&d, &v)| (1 - d, v)).collect();
    Ok((lhs != rhs).then(|| format!("Ext(M,ω)_∅ = {ext:?}, H_∅(M) = {local:?}")))
}

/// `dim Ext^i(M, ω•)_σ = dim H^{-i}_c(U_σ, M†)` for every `σ ≠ ∅`.
pub fn open_set_lemma<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<Outcome> {
    let ext = ext_against_omega(c, m)?;
    for s in 1..c.len() {
        let lhs = ext.column(s);
        let hc = compact_cohomology(m, &c.open_star(s)?)?;
        let rhs: Betti = hc.iter().map(|(&d, &v)| (-d, v)).collect();
        if lhs != rhs {
            return Ok(Some(format!("at {}: {lhs:?} vs {rhs:?}", c.label(s))));
        }
    }
    Ok(None)
}

/// `H•(uHom(M, D(Re_∅))) = Ext•(M, ω•)` per cell.
pub fn u_hom_route<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<Outcome> {
    let dr =
        dualize_module(c, &RModule::projective(m.field(), c.poset_arc(), EMPTY))?.materialize();
    let lhs = u_hom_complex_table(m, &dr)?;
    Ok((lhs != ext_against_omega(c, m)?).then(|| "uHom(M, D(Re_∅)) differs from D(M)".into()))
}

/// `dim uExt^i(J, M)_∅ = dim H^i(X, M†)`.
pub fn j_route<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<Outcome> {
    let j = ideal_j(m.field(), c);
    let lhs = u_ext(&j, m, Route::Injective, false)?.column(EMPTY);
    let rhs = sheaf_cohomology(m);
    Ok((lhs != rhs).then(|| format!("uExt(J,M)_∅ = {lhs:?}, H(X,M†) = {rhs:?}")))
}

/// The `Γ_∅` route against the cellular cochain model, plus the
/// dimension identity of the four-term sequence.
pub fn cellular_model<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<Outcome> {
    let lhs = sheaf_cohomology(m);
    let rhs = cellular_sheaf_cohomology(c, m);
    if lhs != rhs {
        return Ok(Some(format!("Γ_∅ route {lhs:?}, cellular {rhs:?}")));
    }
    let h = local_cohomology(m);
    let alt = get(&h, 0) as i64 - m.dim(EMPTY) as i64 + get(&rhs, 0) as i64 - get(&h, 1) as i64;
    Ok((alt != 0).then(|| format!("four-term sequence alternating sum {alt}")))
}

pub type Check<F> = fn(&CellComplex, &RModule<F>) -> Result<Outcome>;

/// Every check with its name.
pub fn all<F: Field>() -> Vec<(&'static str, Check<F>)> {
    vec![
        ("double_duality", double_duality::<F>),
        ("serre_duality", serre_duality::<F>),
        ("open_set_lemma", open_set_lemma::<F>),
        ("u_hom_route", u_hom_route::<F>),
        ("j_route", j_route::<F>),
        ("cellular_model", cellular_model::<F>),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::fixtures;
    use crate::repalg::random_module;

    #[test]
    fn checks_pass_on_a_few_modules() {
        for named in fixtures::all().into_iter().take(3) {
            for seed in 0..2 {
                let m = random_module(&Rationals, named.complex.poset_arc(), seed, 2);
                for (name, check) in all::<Rationals>() {
                    assert_eq!(
                        check(&named.complex, &m).unwrap(),
                        None,
                        "{name} on {}",
                        named.name
                    );
                }
            }
        }
    }
}
