//! Modules over the incidence algebra of a finite poset, presented by one
//! vector space per element and one matrix per cover.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Betti, CohomologyBasis, Matrix, VectorComplex};
use crate::poset::Poset;
use crate::report::CohomologyTable;

/// `M = ⊕ M_x` with `e_{y,x}: M_x -> M_y` given on covers `x ⋖ y`.
#[derive(Clone, Debug)]
pub struct RModule<F: Field> {
    field: F,
    poset: Arc<Poset>,
    dims: Vec<usize>,
    /// Aligned with `poset.covers()`; entry `k` is `dims[upper] x dims[lower]`.
    maps: Vec<Matrix<F>>,
}

pub(crate) fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> RModule<F> {
    /// Checks shapes and path independence over every interval.
    pub fn new(
        field: &F,
        poset: &Arc<Poset>,
        dims: Vec<usize>,
        maps: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(field, poset, dims, maps)?;
        m.check_path_independence()?;
        Ok(m)
    }

    /// Checks shapes only. For constructions that are modules by design.
    pub fn new_unchecked(
        field: &F,
        poset: &Arc<Poset>,
        dims: Vec<usize>,
        maps: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if dims.len() != poset.len() || maps.len() != poset.covers().len() {
            return Err(Error::Shape(format!(
                "{} dims and {} maps for a poset with {} elements and {} covers",
                dims.len(),
                maps.len(),
                poset.len(),
                poset.covers().len()
            )));
        }
        for (k, &(l, u)) in poset.covers().iter().enumerate() {
            if maps[k].shape() != (dims[u], dims[l]) {
                return Err(Error::Shape(format!(
                    "map {} -> {} is {}x{}, expected {}x{}",
                    poset.label(l),
                    poset.label(u),
                    maps[k].rows(),
                    maps[k].cols(),
                    dims[u],
                    dims[l]
                )));
            }
        }
        Ok(RModule {
            field: field.clone(),
            poset: poset.clone(),
            dims,
            maps,
        })
    }

    /// Builds a module from a per-cover closure.
    pub fn from_fn(
        field: &F,
        poset: &Arc<Poset>,
        dims: Vec<usize>,
        mut map: impl FnMut(usize, usize) -> Matrix<F>,
    ) -> Result<Self> {
        let maps = poset.covers().iter().map(|&(l, u)| map(l, u)).collect();
        Self::new_unchecked(field, poset, dims, maps)
    }

    pub fn zero(field: &F, poset: &Arc<Poset>) -> Self {
        let dims = vec![0; poset.len()];
        Self::from_fn(field, poset, dims, |_, _| Matrix::zeros(field, 0, 0)).expect("zero module")
    }

    /// `Re_x`: `k` on `{y >= x}` with identity actions.
    pub fn projective(field: &F, poset: &Arc<Poset>, x: usize) -> Self {
        Self::indicator(field, poset, poset.above(x))
    }

    /// `E(x)`: `k` on `{y <= x}` with identity actions.
    pub fn injective(field: &F, poset: &Arc<Poset>, x: usize) -> Self {
        Self::indicator(field, poset, poset.below(x))
    }

    /// The simple module `k` at `x`.
    pub fn simple(field: &F, poset: &Arc<Poset>, x: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(poset.len());
        s.insert(x);
        Self::indicator(field, poset, &s)
    }

    /// `k` on a convex set with identity maps inside it.
    fn indicator(field: &F, poset: &Arc<Poset>, set: &FixedBitSet) -> Self {
        let dims = (0..poset.len())
            .map(|y| usize::from(set.contains(y)))
            .collect();
        Self::from_fn(field, poset, dims, |l, u| {
            if set.contains(l) && set.contains(u) {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(
                    field,
                    usize::from(set.contains(u)),
                    usize::from(set.contains(l)),
                )
            }
        })
        .expect("indicator module")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Action of the cover `lower ⋖ upper`.
    pub fn cover_map(&self, lower: usize, upper: usize) -> &Matrix<F> {
        let k = self
            .poset
            .cover_id(lower, upper)
            .unwrap_or_else(|| panic!("({lower}, {upper}) is not a cover"));
        &self.maps[k]
    }

    /// Action `e_{y,x}: M_x -> M_y` for `x <= y`, composed along one chain
    /// of covers.
    pub fn act(&self, x: usize, y: usize) -> Matrix<F> {
        assert!(self.poset.leq(x, y), "act needs x <= y");
        let mut path = Vec::new();
        let mut cur = y;
        while cur != x {
            let z = *self
                .poset
                .lower_covers(cur)
                .iter()
                .find(|&&z| self.poset.leq(x, z))
                .expect("a chain of covers exists");
            path.push((z, cur));
            cur = z;
        }
        let mut m = Matrix::identity(&self.field, self.dims[x]);
        for &(l, u) in path.iter().rev() {
            m = self.cover_map(l, u).mul(&m);
        }
        m
    }

    /// Every chain of covers between two elements gives the same composite.
    pub fn check_path_independence(&self) -> Result<()> {
        let p = &self.poset;
        for x in 0..p.len() {
            let mut acts: Vec<Option<Matrix<F>>> = vec![None; p.len()];
            acts[x] = Some(Matrix::identity(&self.field, self.dims[x]));
            for &y in p.linear_extension() {
                if y == x || !p.leq(x, y) {
                    continue;
                }
                let mut found: Option<Matrix<F>> = None;
                for &z in p.lower_covers(y) {
                    if !p.leq(x, z) {
                        continue;
                    }
                    let via = self
                        .cover_map(z, y)
                        .mul(acts[z].as_ref().expect("processed"));
                    match &found {
                        None => found = Some(via),
                        Some(f) if *f == via => {}
                        Some(_) => {
                            return Err(Error::PathDependence {
                                lower: p.label(x).into(),
                                upper: p.label(y).into(),
                            })
                        }
                    }
                }
                acts[y] = found;
            }
        }
        Ok(())
    }

    /// `M_Ψ`: the submodule living on an order filter.
    pub fn sub_filter(&self, set: &FixedBitSet) -> Result<Self> {
        self.poset
            .check_filter(set)
            .map_err(|(m, x)| Error::NotFilter {
                member: self.poset.label(m).into(),
                missing: self.poset.label(x).into(),
            })?;
        Ok(self.restrict_to(set))
    }

    /// `M / M_Ψ`: the quotient by the submodule on an order filter.
    pub fn quotient_filter(&self, set: &FixedBitSet) -> Result<Self> {
        self.poset
            .check_filter(set)
            .map_err(|(m, x)| Error::NotFilter {
                member: self.poset.label(m).into(),
                missing: self.poset.label(x).into(),
            })?;
        let mut rest = FixedBitSet::with_capacity(self.poset.len());
        rest.insert_range(..);
        rest.difference_with(set);
        Ok(self.restrict_to(&rest))
    }

    /// Zeroes every component outside a convex set.
    fn restrict_to(&self, set: &FixedBitSet) -> Self {
        let dims: Vec<usize> = (0..self.poset.len())
            .map(|x| if set.contains(x) { self.dims[x] } else { 0 })
            .collect();
        let maps = self
            .poset
            .covers()
            .iter()
            .enumerate()
            .map(|(k, &(l, u))| {
                if set.contains(l) && set.contains(u) {
                    self.maps[k].clone()
                } else {
                    Matrix::zeros(&self.field, dims[u], dims[l])
                }
            })
            .collect();
        RModule {
            field: self.field.clone(),
            poset: self.poset.clone(),
            dims,
            maps,
        }
    }

    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or(Error::EmptyInput("direct sum of nothing"))?;
        for p in parts {
            if !same_poset(&p.poset, &first.poset) {
                return Err(Error::PosetMismatch);
            }
        }
        let f = &first.field;
        let poset = &first.poset;
        let dims: Vec<usize> = (0..poset.len())
            .map(|x| parts.iter().map(|p| p.dims[x]).sum())
            .collect();
        let maps = poset
            .covers()
            .iter()
            .enumerate()
            .map(|(k, &(l, u))| {
                let mut m = Matrix::zeros(f, dims[u], dims[l]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.put_block(r, c, &p.maps[k]);
                    r += p.dims[u];
                    c += p.dims[l];
                }
                m
            })
            .collect();
        Ok(RModule {
            field: f.clone(),
            poset: poset.clone(),
            dims,
            maps,
        })
    }

    /// `Hom_k(M, k)` as a module over the opposite poset.
    pub fn k_dual(&self) -> Self {
        self.k_dual_onto(&Arc::new(self.poset.opposite()))
    }

    /// As [`k_dual`](Self::k_dual), reusing an existing opposite poset.
    pub fn k_dual_onto(&self, opposite: &Arc<Poset>) -> Self {
        debug_assert_eq!(**opposite, self.poset.opposite());
        let maps = opposite
            .covers()
            .iter()
            .map(|&(l, u)| self.cover_map(u, l).transpose())
            .collect();
        RModule {
            field: self.field.clone(),
            poset: opposite.clone(),
            dims: self.dims.clone(),
            maps,
        }
    }

    /// Re-expresses the module in new bases: `basis[x]` is an invertible
    /// matrix whose columns are the new basis of `M_x`.
    pub fn change_basis(&self, basis: &[Matrix<F>]) -> Result<Self> {
        let maps = self
            .poset
            .covers()
            .iter()
            .enumerate()
            .map(|(k, &(l, u))| {
                let image = self.maps[k].mul(&basis[l]);
                basis[u]
                    .solve_matrix(&image)
                    .ok_or_else(|| Error::Shape("basis change is not invertible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new_unchecked(&self.field, &self.poset, self.dims.clone(), maps)
    }

    /// Per-element dimensions as a table concentrated in one degree.
    pub fn dims_table(&self, degree: i32) -> CohomologyTable {
        CohomologyTable::concentrated(self.poset.labels().to_vec(), degree, self.dims.clone())
    }
}

/// A module homomorphism: one matrix `N_x x M_x` per element.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    pub maps: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMap<F> {
    /// Checks shapes and commutation with every cover action.
    pub fn new(source: &RModule<F>, target: &RModule<F>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if !same_poset(&source.poset, &target.poset) {
            return Err(Error::PosetMismatch);
        }
        let p = &source.poset;
        if maps.len() != p.len() {
            return Err(Error::Shape("one matrix per element expected".into()));
        }
        for (x, m) in maps.iter().enumerate() {
            if m.shape() != (target.dims[x], source.dims[x]) {
                return Err(Error::Shape(format!(
                    "component at {} is {}x{}, expected {}x{}",
                    p.label(x),
                    m.rows(),
                    m.cols(),
                    target.dims[x],
                    source.dims[x]
                )));
            }
        }
        for (k, &(l, u)) in p.covers().iter().enumerate() {
            let a = target.maps[k].mul(&maps[l]);
            let b = maps[u].mul(&source.maps[k]);
            if a != b {
                return Err(Error::NotModuleMap {
                    lower: p.label(l).into(),
                    upper: p.label(u).into(),
                });
            }
        }
        Ok(ModuleMap { maps })
    }

    pub fn zero(source: &RModule<F>, target: &RModule<F>) -> Self {
        ModuleMap {
            maps: (0..source.dims.len())
                .map(|x| Matrix::zeros(&source.field, target.dims[x], source.dims[x]))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Self {
        ModuleMap {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| b.mul(a))
                .collect(),
        }
    }
}

/// A bounded cochain complex of modules:
/// `M^lo -> M^{lo+1} -> ... -> M^hi`.
#[derive(Clone, Debug)]
pub struct ModuleComplex<F: Field> {
    field: F,
    poset: Arc<Poset>,
    min_degree: i32,
    modules: Vec<RModule<F>>,
    /// `diffs[k]` goes from `modules[k]` to `modules[k + 1]`.
    diffs: Vec<ModuleMap<F>>,
}

impl<F: Field> ModuleComplex<F> {
    /// Checks that consecutive differentials compose to zero.
    pub fn new(
        min_degree: i32,
        modules: Vec<RModule<F>>,
        diffs: Vec<ModuleMap<F>>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(min_degree, modules, diffs)?;
        for k in 1..c.diffs.len() {
            if !c.diffs[k - 1].then(&c.diffs[k]).is_zero() {
                return Err(Error::NotNilpotent(min_degree + k as i32 - 1));
            }
        }
        Ok(c)
    }

    pub fn new_unchecked(
        min_degree: i32,
        modules: Vec<RModule<F>>,
        diffs: Vec<ModuleMap<F>>,
    ) -> Result<Self> {
        let first = modules
            .first()
            .ok_or(Error::EmptyInput("complex without terms"))?;
        if diffs.len() + 1 != modules.len() {
            return Err(Error::Shape(
                "need one differential between consecutive terms".into(),
            ));
        }
        for m in &modules {
            if !same_poset(&m.poset, &first.poset) {
                return Err(Error::PosetMismatch);
            }
        }
        Ok(ModuleComplex {
            field: first.field.clone(),
            poset: first.poset.clone(),
            min_degree,
            modules,
            diffs,
        })
    }

    /// `M` placed in a single degree.
    pub fn concentrated(m: RModule<F>, degree: i32) -> Self {
        Self::new_unchecked(degree, vec![m], vec![]).expect("single term")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.modules.len() as i32 - 1
    }

    pub fn modules(&self) -> &[RModule<F>] {
        &self.modules
    }

    pub fn module(&self, degree: i32) -> Option<&RModule<F>> {
        let k = degree - self.min_degree;
        if k < 0 {
            None
        } else {
            self.modules.get(k as usize)
        }
    }

    /// Differential leaving `degree`.
    pub fn diff(&self, degree: i32) -> Option<&ModuleMap<F>> {
        let k = degree - self.min_degree;
        if k < 0 {
            None
        } else {
            self.diffs.get(k as usize)
        }
    }

    /// The complex of vector spaces at one element.
    pub fn at(&self, x: usize) -> VectorComplex<F> {
        let dims = self.modules.iter().map(|m| m.dims[x]).collect();
        let diffs = self.diffs.iter().map(|d| d.maps[x].clone()).collect();
        VectorComplex::new_unchecked(&self.field, self.min_degree, dims, diffs)
            .expect("shapes agree")
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

    /// `H^degree` as a module, with the actions induced on cohomology.
    pub fn cohomology_module(&self, degree: i32) -> RModule<F> {
        let p = &self.poset;
        let bases: Vec<CohomologyBasis<F>> = (0..p.len())
            .map(|x| self.at(x).cohomology_basis(degree))
            .collect();
        let dims = bases.iter().map(CohomologyBasis::dim).collect();
        let term = self.module(degree);
        RModule::from_fn(&self.field, p, dims, |l, u| {
            let (bl, bu) = (&bases[l], &bases[u]);
            let mut m = Matrix::zeros(&self.field, bu.dim(), bl.dim());
            if let Some(t) = term {
                let act = t.cover_map(l, u);
                for j in 0..bl.dim() {
                    let image = act.mul_vec(&bl.representatives.column(j));
                    let class = bu.class_of(&image).expect("a cycle maps to a cycle");
                    for (i, v) in class.into_iter().enumerate() {
                        m.set(i, j, v);
                    }
                }
            }
            m
        })
        .expect("induced module")
    }

    /// Degreewise `M^j_Ψ`; a subcomplex because `Ψ` is upward closed.
    pub fn sub_filter(&self, set: &FixedBitSet) -> Result<Self> {
        let modules = self
            .modules
            .iter()
            .map(|m| m.sub_filter(set))
            .collect::<Result<Vec<_>>>()?;
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| ModuleMap {
                maps: (0..self.poset.len())
                    .map(|x| {
                        if set.contains(x) {
                            d.maps[x].clone()
                        } else {
                            Matrix::zeros(&self.field, modules[k + 1].dims[x], modules[k].dims[x])
                        }
                    })
                    .collect(),
            })
            .collect();
        Self::new_unchecked(self.min_degree, modules, diffs)
    }

    /// Termwise `Hom_k(-, k)` over the opposite poset. Degrees are negated:
    /// the dual has `M^{-t}` in degree `t`.
    pub fn k_dual(&self) -> Self {
        self.k_dual_onto(&Arc::new(self.poset.opposite()))
    }

    pub fn k_dual_onto(&self, opposite: &Arc<Poset>) -> Self {
        let modules: Vec<RModule<F>> = self
            .modules
            .iter()
            .rev()
            .map(|m| m.k_dual_onto(opposite))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .rev()
            .map(|d| ModuleMap {
                maps: d.maps.iter().map(Matrix::transpose).collect(),
            })
            .collect();
        Self::new_unchecked(-self.max_degree(), modules, diffs).expect("dual complex")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcomplex::EMPTY;
    use crate::field::Rationals;
    use crate::fixtures;

    #[test]
    fn projectives_and_injectives() {
        let t = fixtures::triangle_boundary();
        let p = t.poset_arc();
        let re = RModule::projective(&Rationals, p, EMPTY);
        assert_eq!(re.dims(), &[1; 7]);
        re.check_path_independence().unwrap();
        let e = t.require("1-2").unwrap();
        let inj = RModule::injective(&Rationals, p, e);
        assert_eq!(inj.total_dim(), 4);
        assert_eq!(
            RModule::injective(&Rationals, p, EMPTY).dims(),
            RModule::simple(&Rationals, p, EMPTY).dims()
        );
        let d = fixtures::disc2();
        let rho1 = d.require("rho1").unwrap();
        let m = RModule::projective(&Rationals, d.poset_arc(), rho1);
        let support: Vec<&str> = (0..d.len())
            .filter(|&x| m.dim(x) == 1)
            .map(|x| d.label(x))
            .collect();
        assert_eq!(support, vec!["rho1", "tau1", "tau2", "sigma"]);
        let sigma = d.require("sigma").unwrap();
        assert_eq!(
            RModule::injective(&Rationals, d.poset_arc(), sigma).dims(),
            &[1; 6]
        );
    }

    #[test]
    fn path_dependence_is_detected() {
        let d = fixtures::disc2();
        let p = d.poset_arc();
        let sigma = d.require("sigma").unwrap();
        let tau1 = d.require("tau1").unwrap();
        let rho1 = d.require("rho1").unwrap();
        // k everywhere, identity maps except a doubled tau1 -> sigma
        let dims = vec![1; d.len()];
        let bad = RModule::from_fn(&Rationals, p, dims, |l, u| {
            if (l, u) == (tau1, sigma) {
                Matrix::from_i64_rows(&Rationals, &[&[2]])
            } else {
                Matrix::identity(&Rationals, 1)
            }
        })
        .unwrap();
        let err = bad.check_path_independence().unwrap_err();
        assert!(matches!(err, Error::PathDependence { .. }));
        let _ = rho1;
    }

    #[test]
    fn filters_and_duals() {
        let t = fixtures::triangle_boundary();
        let p = t.poset_arc();
        let e = t.require("1-2").unwrap();
        let re = RModule::projective(&Rationals, p, EMPTY);
        let sub = re.sub_filter(&t.cell_set([e])).unwrap();
        assert_eq!(sub.dims(), RModule::simple(&Rationals, p, e).dims());
        let v = t.require("1").unwrap();
        assert!(matches!(
            re.sub_filter(&t.cell_set([v])),
            Err(Error::NotFilter { .. })
        ));
        let q = re.quotient_filter(&t.cell_set([e])).unwrap();
        assert_eq!(q.dim(e), 0);
        assert_eq!(q.total_dim(), 6);
        q.check_path_independence().unwrap();

        let dual = RModule::injective(&Rationals, p, e).k_dual();
        let proj = RModule::projective(&Rationals, dual.poset(), e);
        assert_eq!(dual.dims(), proj.dims());
        assert_eq!(dual.maps(), proj.maps());
    }

    #[test]
    fn module_maps_and_complexes() {
        let t = fixtures::triangle_boundary();
        let p = t.poset_arc();
        let e = t.require("1-2").unwrap();
        let pe = RModule::projective(&Rationals, p, e);
        let re = RModule::projective(&Rationals, p, EMPTY);
        // inclusion Re_e -> Re_empty
        let incl: Vec<Matrix<Rationals>> = (0..t.len())
            .map(|x| Matrix::zeros(&Rationals, re.dim(x), pe.dim(x)))
            .enumerate()
            .map(|(x, mut m)| {
                if pe.dim(x) == 1 {
                    m.set(0, 0, Rationals.one());
                }
                m
            })
            .collect();
        let f = ModuleMap::new(&pe, &re, incl.clone()).unwrap();
        let c = ModuleComplex::new(-1, vec![pe.clone(), re.clone()], vec![f]).unwrap();
        let h = c.cohomology_table();
        let mut expected = re.dims().to_vec();
        expected[e] = 0;
        assert_eq!(
            h,
            CohomologyTable::concentrated(t.labels().to_vec(), 0, expected)
        );
        let dual = c.k_dual();
        assert_eq!(dual.min_degree(), 0);
        assert_eq!(dual.cohomology_table().get(0, e), 0);
        // the reverse direction is not a module map
        let back: Vec<_> = incl.iter().map(Matrix::transpose).collect();
        assert!(ModuleMap::new(&re, &pe, back).is_err());
    }

    #[test]
    fn induced_actions_on_cohomology() {
        let t = fixtures::triangle_boundary();
        let re = RModule::projective(&Rationals, t.poset_arc(), EMPTY);
        let c = ModuleComplex::concentrated(re.clone(), 0);
        let h = c.cohomology_module(0);
        assert_eq!(h.dims(), re.dims());
        assert_eq!(h.maps(), re.maps());
    }
}
