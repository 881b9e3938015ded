//! Complexes whose terms are direct sums of indecomposable projectives
//! `Re_x` or indecomposable injectives `E(x)`.
//!
//! A term is a list of generator cells; a differential is a coefficient
//! matrix (target generators x source generators). `Hom(Re_x, Re_y)` and
//! `Hom(E(x), E(y))` are both `k` when `x >= y` and zero otherwise, so a
//! nonzero coefficient always runs from a larger source cell to a smaller
//! target cell. Evaluating such a complex at one element only needs the
//! generators present there, which keeps cohomology computations small.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Betti, Matrix, VectorComplex};
use crate::poset::Poset;
use crate::report::CohomologyTable;

use super::module::{ModuleComplex, ModuleMap, RModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumKind {
    /// Sums of `Re_x`, present at every `y >= x`.
    Projective,
    /// Sums of `E(x)`, present at every `y <= x`.
    Injective,
}

impl SumKind {
    pub fn dual(self) -> Self {
        match self {
            SumKind::Projective => SumKind::Injective,
            SumKind::Injective => SumKind::Projective,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SumComplex<F: Field> {
    field: F,
    poset: Arc<Poset>,
    kind: SumKind,
    min_degree: i32,
    gens: Vec<Vec<usize>>,
    /// `diffs[k]` is `gens[k+1].len() x gens[k].len()`.
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> SumComplex<F> {
    /// Checks shapes, the coefficient support rule and `d∘d = 0`.
    pub fn new(
        field: &F,
        poset: &Arc<Poset>,
        kind: SumKind,
        min_degree: i32,
        gens: Vec<Vec<usize>>,
        diffs: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(field, poset, kind, min_degree, gens, diffs)?;
        c.check_support()?;
        for k in 1..c.diffs.len() {
            if !c.diffs[k].mul(&c.diffs[k - 1]).is_zero() {
                return Err(Error::NotNilpotent(min_degree + k as i32 - 1));
            }
        }
        Ok(c)
    }

    pub fn new_unchecked(
        field: &F,
        poset: &Arc<Poset>,
        kind: SumKind,
        min_degree: i32,
        gens: Vec<Vec<usize>>,
        diffs: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if gens.is_empty() || diffs.len() + 1 != gens.len() {
            return Err(Error::Shape(
                "need one differential between consecutive terms".into(),
            ));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (gens[k + 1].len(), gens[k].len()) {
                return Err(Error::Shape(format!(
                    "coefficient matrix at degree {} has the wrong shape",
                    min_degree + k as i32
                )));
            }
        }
        Ok(SumComplex {
            field: field.clone(),
            poset: poset.clone(),
            kind,
            min_degree,
            gens,
            diffs,
        })
    }

    /// The zero complex in degree 0.
    pub fn zero(field: &F, poset: &Arc<Poset>, kind: SumKind) -> Self {
        Self::new_unchecked(field, poset, kind, 0, vec![Vec::new()], Vec::new()).expect("zero")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }
    pub fn kind(&self) -> SumKind {
        self.kind
    }
    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }
    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.gens.len() as i32 - 1
    }

    /// Generator cells in `degree`.
    pub fn gens(&self, degree: i32) -> &[usize] {
        let k = degree - self.min_degree;
        if k < 0 || k as usize >= self.gens.len() {
            &[]
        } else {
            &self.gens[k as usize]
        }
    }

    pub fn all_gens(&self) -> &[Vec<usize>] {
        &self.gens
    }

    /// Coefficient matrix leaving `degree`.
    pub fn diff(&self, degree: i32) -> Option<&Matrix<F>> {
        let k = degree - self.min_degree;
        if k < 0 {
            None
        } else {
            self.diffs.get(k as usize)
        }
    }

    pub fn diffs(&self) -> &[Matrix<F>] {
        &self.diffs
    }

    pub fn total_gens(&self) -> usize {
        self.gens.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_gens() == 0
    }

    /// Whether a generator at `gen` contributes to the component at `x`.
    #[inline]
    pub fn present(&self, gen: usize, x: usize) -> bool {
        match self.kind {
            SumKind::Projective => self.poset.leq(gen, x),
            SumKind::Injective => self.poset.leq(x, gen),
        }
    }

    fn check_support(&self) -> Result<()> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (i, &t) in self.gens[k + 1].iter().enumerate() {
                for (j, &s) in self.gens[k].iter().enumerate() {
                    if !self.field.is_zero(d.get(i, j)) && !self.poset.leq(t, s) {
                        return Err(Error::Invariant(format!(
                            "coefficient from {} to {} at degree {} has no morphism behind it",
                            self.poset.label(s),
                            self.poset.label(t),
                            self.min_degree + k as i32
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Minimal in the sense that no coefficient joins two generators at the
    /// same cell, i.e. differentials land in the radical.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().enumerate().all(|(k, d)| {
            self.gens[k + 1].iter().enumerate().all(|(i, &t)| {
                self.gens[k]
                    .iter()
                    .enumerate()
                    .all(|(j, &s)| s != t || self.field.is_zero(d.get(i, j)))
            })
        })
    }

    /// Indices of the generators of degree slot `k` that pass `keep`.
    fn select(&self, k: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        self.gens[k]
            .iter()
            .enumerate()
            .filter(|&(_, &g)| keep(g))
            .map(|(i, _)| i)
            .collect()
    }

    /// The subcomplex of vector spaces spanned by generators passing `keep`,
    /// with the corresponding blocks of the coefficient matrices. This is
    /// the evaluation at `x` when `keep` is presence at `x`.
    pub fn restricted(&self, keep: impl Fn(usize) -> bool) -> VectorComplex<F> {
        let idx: Vec<Vec<usize>> = (0..self.gens.len())
            .map(|k| self.select(k, &keep))
            .collect();
        let dims = idx.iter().map(Vec::len).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| d.select(&idx[k + 1], &idx[k]))
            .collect();
        VectorComplex::new_unchecked(&self.field, self.min_degree, dims, diffs).expect("shapes")
    }

    pub fn at(&self, x: usize) -> VectorComplex<F> {
        self.restricted(|g| self.present(g, x))
    }

    pub fn cohomology_at(&self, x: usize) -> Betti {
        self.at(x).cohomology()
    }

    pub fn cohomology_table(&self) -> CohomologyTable {
        let mut t = CohomologyTable::new(self.poset.labels().to_vec());
        for x in 0..self.poset.len() {
            for (d, v) in self.cohomology_at(x) {
                t.add(d, x, v);
            }
        }
        t
    }

    /// Dimension of the term in `degree` at `x`.
    pub fn dim_at(&self, degree: i32, x: usize) -> usize {
        self.gens(degree)
            .iter()
            .filter(|&&g| self.present(g, x))
            .count()
    }

    /// Writes out every term as an explicit module.
    pub fn materialize(&self) -> ModuleComplex<F> {
        let p = &self.poset;
        let f = &self.field;
        let present: Vec<Vec<Vec<usize>>> = (0..self.gens.len())
            .map(|k| {
                (0..p.len())
                    .map(|x| self.select(k, |g| self.present(g, x)))
                    .collect()
            })
            .collect();
        let modules: Vec<RModule<F>> = (0..self.gens.len())
            .map(|k| {
                let dims = present[k].iter().map(Vec::len).collect();
                RModule::from_fn(f, p, dims, |l, u| {
                    // inclusion (projective) or projection (injective) on shared generators
                    let (rows, cols) = (&present[k][u], &present[k][l]);
                    let mut m = Matrix::zeros(f, rows.len(), cols.len());
                    for (i, g) in rows.iter().enumerate() {
                        if let Ok(j) = cols.binary_search(g) {
                            m.set(i, j, f.one());
                        }
                    }
                    m
                })
                .expect("sum module")
            })
            .collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| ModuleMap {
                maps: (0..p.len())
                    .map(|x| d.select(&present[k + 1][x], &present[k][x]))
                    .collect(),
            })
            .collect();
        ModuleComplex::new_unchecked(self.min_degree, modules, diffs).expect("materialized")
    }

    /// Termwise `Hom_k(-, k)`: projectives and injectives swap, the poset is
    /// reversed, degrees are negated and coefficient matrices transposed.
    pub fn k_dual_onto(&self, opposite: &Arc<Poset>) -> Self {
        let gens: Vec<Vec<usize>> = self.gens.iter().rev().cloned().collect();
        let diffs = self.diffs.iter().rev().map(Matrix::transpose).collect();
        Self::new_unchecked(
            &self.field,
            opposite,
            self.kind.dual(),
            -self.max_degree(),
            gens,
            diffs,
        )
        .expect("dual complex")
    }

    pub fn k_dual(&self) -> Self {
        self.k_dual_onto(&Arc::new(self.poset.opposite()))
    }
}
