//! The dualizing complex `ω•` over `R ⊗_k R`, the incidence algebra of
//! `Σ × Σ`.
//!
//! `ω^i = ⊕_{dim σ = -i} E_{Σ×Σ}((σ, σ))`, with basis `e(σ)^τ_ρ` for
//! `σ >= τ, ρ`, and `d e(σ)^τ_ρ = Σ_{σ' ⋖ σ} ε(σ, σ') e(σ')^τ_ρ`. The
//! `(τ, ρ)` component only involves cells above both `τ` and `ρ`, so it is
//! evaluated directly from the one-variable complex of cells without
//! building the product poset.

use std::sync::Arc;

use crate::cellcomplex::CellComplex;
use crate::field::{sign, Field};
use crate::linalg::{Betti, Matrix, VectorComplex};
use crate::repalg::{SumComplex, SumKind};

#[derive(Clone, Debug)]
pub struct Omega<F: Field> {
    /// One generator per cell `σ`, in degree `-dim σ`, coefficients `ε`.
    cells: SumComplex<F>,
    below_counts: Vec<usize>,
    dims: Vec<i32>,
}

pub fn build_omega<F: Field>(field: &F, c: &CellComplex) -> Omega<F> {
    let d = c.max_dim().max(-1);
    let lo = -d;
    let gens: Vec<Vec<usize>> = (lo..=1).map(|i| c.cells_of_dim(-i).to_vec()).collect();
    let diffs = (0..gens.len() - 1)
        .map(|k| {
            let mut m = Matrix::zeros(field, gens[k + 1].len(), gens[k].len());
            for (j, &s) in gens[k].iter().enumerate() {
                for (i, &t) in gens[k + 1].iter().enumerate() {
                    let e = c.eps(s, t);
                    if e != 0 {
                        m.set(i, j, sign(field, e));
                    }
                }
            }
            m
        })
        .collect();
    let cells = SumComplex::new(field, c.poset_arc(), SumKind::Injective, lo, gens, diffs)
        .expect("the incidence axioms make ω• a complex");
    Omega {
        cells,
        below_counts: (0..c.len())
            .map(|s| c.poset().below(s).count_ones(..))
            .collect(),
        dims: c.dims().to_vec(),
    }
}

impl<F: Field> Omega<F> {
    pub fn min_degree(&self) -> i32 {
        self.cells.min_degree()
    }

    pub fn max_degree(&self) -> i32 {
        self.cells.max_degree()
    }

    /// `dim_k ω^i = Σ_{dim σ = -i} μ(σ)²` with `μ(σ) = #{τ <= σ}`.
    pub fn dim(&self, i: i32) -> usize {
        self.cells
            .gens(i)
            .iter()
            .map(|&s| self.below_counts[s].pow(2))
            .sum()
    }

    /// `(ω•)^τ_ρ` as a complex of vector spaces.
    pub fn component(&self, tau: usize, rho: usize) -> VectorComplex<F> {
        let p = self.cells.poset();
        self.cells.restricted(|s| p.leq(tau, s) && p.leq(rho, s))
    }

    /// `dim H^i(ω•)^τ_ρ` for every `i`.
    pub fn cohomology_at(&self, tau: usize, rho: usize) -> Betti {
        self.component(tau, rho).cohomology()
    }

    /// Every nonzero `(i, τ, ρ, dim)` of `H•(ω•)`.
    pub fn cohomology_entries(&self) -> Vec<(i32, usize, usize, usize)> {
        let n = self.dims.len();
        let mut out = Vec::new();
        for tau in 0..n {
            for rho in 0..n {
                for (i, v) in self.cohomology_at(tau, rho) {
                    out.push((i, tau, rho, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The complex as sums of `E((σ, σ))` over the product poset `Σ × Σ`,
    /// where `(τ, ρ)` has index `τ·n + ρ`.
    pub fn product_complex(&self) -> SumComplex<F> {
        let p = self.cells.poset();
        let n = p.len();
        let product = Arc::new(p.product(p));
        let gens = self
            .cells
            .all_gens()
            .iter()
            .map(|g| g.iter().map(|&s| s * n + s).collect())
            .collect();
        SumComplex::new(
            self.cells.field(),
            &product,
            SumKind::Injective,
            self.min_degree(),
            gens,
            self.cells.diffs().to_vec(),
        )
        .expect("ω• over Σ × Σ")
    }

    /// The one-variable complex of cells, which is `D(Re_∅)`.
    pub fn cell_complex(&self) -> &SumComplex<F> {
        &self.cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcomplex::EMPTY;
    use crate::field::Rationals;
    use crate::fixtures;

    #[test]
    fn basis_counts() {
        let t = fixtures::triangle_boundary();
        let w = build_omega(&Rationals, &t);
        assert_eq!(w.dim(-1), 48);
        assert_eq!(w.dim(0), 3 * 4);
        assert_eq!(w.dim(1), 1);
        let prod = w.product_complex().materialize();
        let total: usize = prod.module(-1).unwrap().total_dim();
        assert_eq!(total, 48);
        for m in prod.modules() {
            m.check_path_independence().unwrap();
        }
        let s = fixtures::simplex2();
        assert_eq!(build_omega(&Rationals, &s).dim(1), 1);
    }

    #[test]
    fn left_restriction_is_a_sum_of_injectives() {
        let d = fixtures::disc2();
        let w = build_omega(&Rationals, &d);
        let p = d.poset();
        for i in w.min_degree()..=w.max_degree() {
            for tau in 0..d.len() {
                let direct: usize = (0..d.len()).map(|rho| w.component(tau, rho).dim(i)).sum();
                let expected: usize = d
                    .cells_of_dim(-i)
                    .iter()
                    .filter(|&&s| p.leq(tau, s))
                    .map(|&s| p.below(s).count_ones(..))
                    .sum();
                assert_eq!(direct, expected);
            }
        }
    }

    #[test]
    fn disc_component_pin() {
        let d = fixtures::disc2();
        let w = build_omega(&Rationals, &d);
        let (r1, r2) = (d.require("rho1").unwrap(), d.require("rho2").unwrap());
        assert_eq!(w.cohomology_at(r1, r2), Betti::from([(-1, 1)]));
        // the augmented cochain complex of a disc is acyclic
        assert!(w.cohomology_at(EMPTY, EMPTY).is_empty());
        let sigma = d.require("sigma").unwrap();
        assert_eq!(w.cohomology_at(sigma, EMPTY), Betti::from([(-2, 1)]));
    }
}
