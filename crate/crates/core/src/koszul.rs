//! Koszulness of `R` with the grading `deg e_{σ,σ'} = dim σ - dim σ'`, the
//! quadratic dual `R^!` and the functors `DF`, `DG`.

use serde_json::{json, Value};

use crate::cellcomplex::CellComplex;
use crate::dualize::{dualize_complex, dualize_module};
use crate::error::Result;
use crate::field::{sign, Field};
use crate::linalg::Matrix;
use crate::repalg::{min_projective_resolution, ModuleComplex, RModule, SumComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleResolution {
    pub cell: String,
    pub length: usize,
    /// Internal degrees of the generators of `P^{-i}`, per `i`.
    pub degrees: Vec<Vec<i32>>,
    /// `P^{-i}` is generated in degree `i` for every `i`.
    pub linear: bool,
    /// Every nonzero coefficient has internal degree 0 once the shift of
    /// the generators is accounted for.
    pub homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulCertificate {
    pub koszul: bool,
    pub per_simple: Vec<SimpleResolution>,
}

/// Resolves every simple completely and checks linearity. The resolutions
/// are finite, so this decides Koszulness.
pub fn koszul_certificate<F: Field>(field: &F, c: &CellComplex) -> KoszulCertificate {
    let mut per_simple = Vec::with_capacity(c.len());
    for x in 0..c.len() {
        let res = min_projective_resolution(&RModule::simple(field, c.poset_arc(), x));
        let length = res.length();
        let degrees: Vec<Vec<i32>> = (0..=length)
            .map(|i| {
                let mut d: Vec<i32> = res.gens(i).iter().map(|&y| c.dim(y) - c.dim(x)).collect();
                d.sort_unstable();
                d.dedup();
                d
            })
            .collect();
        let linear = degrees
            .iter()
            .enumerate()
            .all(|(i, d)| d.iter().all(|&g| g == i as i32));
        // a coefficient from a generator at s in P^{-i-1} to one at t in
        // P^{-i} is a multiple of e_{s,t}, of degree dim s - dim t
        let cx = &res.complex;
        let homogeneous = (cx.min_degree()..cx.max_degree()).all(|deg| {
            let d = cx.diff(deg).expect("in range");
            let (src, dst) = (cx.gens(deg), cx.gens(deg + 1));
            dst.iter().enumerate().all(|(i, &t)| {
                src.iter()
                    .enumerate()
                    .all(|(j, &s)| field.is_zero(d.get(i, j)) || c.dim(s) - c.dim(t) == 1)
            })
        });
        per_simple.push(SimpleResolution {
            cell: c.label(x).to_string(),
            length,
            degrees,
            linear,
            homogeneous,
        });
    }
    KoszulCertificate {
        koszul: per_simple.iter().all(|s| s.linear && s.homogeneous),
        per_simple,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticDualReport {
    pub holds: bool,
    pub diamonds: usize,
    /// `dim I_2` and `dim I^⊥`.
    pub relations: usize,
    pub dual_relations: usize,
    /// `I_2` is spanned by the diamond differences.
    pub relations_are_diamonds: bool,
    /// `I^⊥` is spanned by the diamond sums.
    pub dual_relations_are_diamonds: bool,
    /// The twisted map `e_{σ,τ} ↦ ε(σ,τ) e*_{τ,σ}` sends the relations of
    /// `R^op` onto `I^⊥`.
    pub twisted_map_matches: bool,
}

fn same_span<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>], width: usize) -> bool {
    let rows = |v: &[Vec<F::Elem>]| -> Matrix<F> {
        if v.is_empty() {
            Matrix::zeros(field, width, 0)
        } else {
            Matrix::from_columns(field, width, v)
        }
    };
    let (ma, mb) = (rows(a), rows(b));
    let r = ma.rank();
    r == mb.rank() && ma.hstack(&mb).rank() == r
}

/// Degree-2 relations of `R` and of its quadratic dual.
///
/// Paths of length two `σ ⋗ ρ ⋗ τ` index a basis of `R_1 ⊗ R_1` (over the
/// idempotents) and, through `e*_{τ,ρ} ⊗ e*_{ρ,σ}`, the dual basis of
/// `R_1^* ⊗ R_1^*`; the pairing is the identity in these coordinates.
pub fn quadratic_dual_check<F: Field>(field: &F, c: &CellComplex) -> QuadraticDualReport {
    quadratic_dual_with(field, c, |u, l| c.eps(u, l))
}

fn quadratic_dual_with<F: Field>(
    field: &F,
    c: &CellComplex,
    eps: impl Fn(usize, usize) -> i8,
) -> QuadraticDualReport {
    let p = c.poset();
    let mut paths: Vec<(usize, usize, usize)> = Vec::new();
    for &(rho, sigma) in p.covers() {
        for &tau in p.lower_covers(rho) {
            paths.push((sigma, rho, tau));
        }
    }
    paths.sort_unstable();
    let index = |path: (usize, usize, usize)| paths.binary_search(&path).expect("a path");
    let width = paths.len();

    // I_2 = kernel of multiplication R_1 ⊗ R_1 -> R_2, e_{σ,ρ} e_{ρ,τ} = e_{σ,τ}
    let mut targets: Vec<(usize, usize)> = paths.iter().map(|&(s, _, t)| (s, t)).collect();
    targets.sort_unstable();
    targets.dedup();
    let mut mult = Matrix::zeros(field, targets.len(), width);
    for (k, &(s, _, t)) in paths.iter().enumerate() {
        mult.set(
            targets.binary_search(&(s, t)).expect("target"),
            k,
            field.one(),
        );
    }
    let relations = mult.kernel_basis();

    let diamonds = c.diamonds();
    let unit = |k: usize, v: F::Elem, out: &mut Vec<F::Elem>| out[k] = field.add(&out[k], &v);
    let mut differences = Vec::new();
    let mut sums = Vec::new();
    let mut twisted = Vec::new();
    for dm in &diamonds {
        let (s, t) = (dm.top, dm.bottom);
        let (r1, r2) = (dm.mid[0], dm.mid[1]);
        let (a, b) = (index((s, r1, t)), index((s, r2, t)));
        let mut diff = vec![field.zero(); width];
        unit(a, field.one(), &mut diff);
        unit(b, field.neg(&field.one()), &mut diff);
        differences.push(diff);
        let mut sum = vec![field.zero(); width];
        unit(a, field.one(), &mut sum);
        unit(b, field.one(), &mut sum);
        sums.push(sum);
        // the R^op relation e_{ρ1,τ}∘e_{σ,ρ1} - e_{ρ2,τ}∘e_{σ,ρ2} under the
        // twisted map lands on ε(ρi,τ)ε(σ,ρi) e*_{τ,ρi} ⊗ e*_{ρi,σ}
        let w1 = sign(field, eps(r1, t) * eps(s, r1));
        let w2 = sign(field, eps(r2, t) * eps(s, r2));
        let mut tw = vec![field.zero(); width];
        unit(a, w1, &mut tw);
        unit(b, field.neg(&w2), &mut tw);
        twisted.push(tw);
    }

    // I^⊥ = annihilator of I_2 under the identity pairing
    let dual_relations = if relations.is_empty() {
        (0..width)
            .map(|k| {
                let mut v = vec![field.zero(); width];
                v[k] = field.one();
                v
            })
            .collect()
    } else {
        Matrix::from_columns(field, width, &relations)
            .transpose()
            .kernel_basis()
    };

    let relations_are_diamonds = same_span(field, &relations, &differences, width);
    let dual_relations_are_diamonds = same_span(field, &dual_relations, &sums, width);
    let twisted_map_matches = same_span(field, &twisted, &dual_relations, width);
    QuadraticDualReport {
        holds: relations_are_diamonds && dual_relations_are_diamonds && twisted_map_matches,
        diamonds: diamonds.len(),
        relations: relations.len(),
        dual_relations: dual_relations.len(),
        relations_are_diamonds,
        dual_relations_are_diamonds,
        twisted_map_matches,
    }
}

/// `DF = D_k ∘ D`: a complex of projectives over the opposite poset.
pub fn df<F: Field>(c: &CellComplex, m: &RModule<F>) -> Result<SumComplex<F>> {
    Ok(dualize_module(c, m)?.k_dual_onto(c.opposite_arc()))
}

/// `DG = D ∘ D_k^op` for a complex over the opposite poset.
pub fn dg<F: Field>(c: &CellComplex, n: &ModuleComplex<F>) -> Result<SumComplex<F>> {
    dualize_complex(c, &n.k_dual_onto(c.poset_arc()))
}

impl KoszulCertificate {
    pub fn to_json(&self, quadratic: &QuadraticDualReport) -> Value {
        let per: Vec<Value> = self
            .per_simple
            .iter()
            .map(|s| json!({"cell": s.cell, "length": s.length, "degrees": s.degrees, "linear": s.linear}))
            .collect();
        json!({
            "koszul": self.koszul,
            "quadratic_self_dual": quadratic.holds,
            "diamonds": quadratic.diamonds,
            "per_simple": per,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcomplex::EMPTY;
    use crate::field::{PrimeField, Rationals};
    use crate::fixtures;
    use crate::repalg::{min_injective_resolution, random_module};

    #[test]
    fn simple_at_empty_on_the_circle() {
        let t = fixtures::triangle_boundary();
        let cert = koszul_certificate(&Rationals, &t);
        assert!(cert.koszul);
        let s = &cert.per_simple[EMPTY];
        assert_eq!(s.length, 2);
        assert_eq!(s.degrees, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn top_simples_have_long_injective_resolutions() {
        let s = fixtures::simplex2();
        let top = s.require("1-2-3").unwrap();
        let i = min_injective_resolution(&RModule::simple(&Rationals, s.poset_arc(), top));
        assert_eq!(i.max_degree(), 3);
    }

    #[test]
    fn quadratic_duals() {
        let s = fixtures::simplex2();
        let q = quadratic_dual_check(&Rationals, &s);
        assert!(q.holds);
        assert_eq!((q.diamonds, q.relations, q.dual_relations), (6, 6, 6));
        for named in fixtures::all() {
            assert!(quadratic_dual_check(&PrimeField::new(3).unwrap(), &named.complex).holds);
        }
    }

    #[test]
    fn broken_signs_break_the_twisted_map() {
        let t = fixtures::triangle_boundary();
        let (v, e) = (t.require("1").unwrap(), t.require("1-2").unwrap());
        assert!(t.with_epsilon(flipped(&t, v, e)).is_err());
        let q = quadratic_dual_with(&Rationals, &t, |u, l| {
            if (u, l) == (e, v) {
                -t.eps(u, l)
            } else {
                t.eps(u, l)
            }
        });
        assert!(q.relations_are_diamonds && q.dual_relations_are_diamonds);
        assert!(!q.twisted_map_matches);
    }

    fn flipped(t: &CellComplex, lower: usize, upper: usize) -> Vec<i8> {
        let mut eps = t.epsilon().to_vec();
        let k = t.poset().cover_id(lower, upper).unwrap();
        eps[k] = -eps[k];
        eps
    }

    #[test]
    fn df_dg_round_trip() {
        let d = fixtures::disc2();
        let f = PrimeField::new(3).unwrap();
        for seed in 0..3 {
            let m = random_module(&f, d.poset_arc(), seed, 2);
            let round = dg(&d, &df(&d, &m).unwrap().materialize()).unwrap();
            assert_eq!(round.cohomology_table(), m.dims_table(0));
        }
        let sigma = d.require("sigma").unwrap();
        let s = df(&d, &RModule::simple(&Rationals, d.poset_arc(), sigma)).unwrap();
        let table = s.cohomology_table();
        assert_eq!(table.degrees().collect::<Vec<_>>(), vec![2]);
        assert!(df(&d, &RModule::zero(&Rationals, d.poset_arc()))
            .unwrap()
            .is_zero());
    }
}
