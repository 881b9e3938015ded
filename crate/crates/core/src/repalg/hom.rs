//! Hom spaces, the internal Hom `uHom`, and Ext / uExt by either resolution.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Betti, Matrix, VectorComplex};
use crate::report::CohomologyTable;

use super::module::{same_poset, ModuleComplex, ModuleMap, RModule};
use super::resolution::{min_injective_resolution, min_projective_resolution};
use super::sums::{SumComplex, SumKind};

#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub dim: usize,
    pub basis: Vec<ModuleMap<F>>,
}

/// Unknowns of a Hom system: the entries of `f_x` for `x` in a support set,
/// row-major, blocks in increasing element order.
struct Layout {
    offset: Vec<Option<usize>>,
    total: usize,
}

impl Layout {
    fn new<F: Field>(m: &RModule<F>, n: &RModule<F>, support: &FixedBitSet) -> Self {
        let mut offset = vec![None; m.dims().len()];
        let mut total = 0;
        for x in support.ones() {
            offset[x] = Some(total);
            total += n.dim(x) * m.dim(x);
        }
        Layout { offset, total }
    }
}

/// Basis (as columns) of the module maps `M|_S -> N|_S` for an upward
/// closed set `S`, i.e. `Hom(M_S, N)`.
fn hom_kernel<F: Field>(
    m: &RModule<F>,
    n: &RModule<F>,
    support: &FixedBitSet,
) -> (Layout, Matrix<F>) {
    let f = m.field();
    let p = m.poset();
    let layout = Layout::new(m, n, support);
    let mut rows: Vec<Vec<(usize, F::Elem)>> = Vec::new();
    for &(l, u) in p.covers() {
        let (Some(ol), Some(ou)) = (layout.offset[l], layout.offset[u]) else {
            continue;
        };
        let (ml, mu, nl, nu) = (m.dim(l), m.dim(u), n.dim(l), n.dim(u));
        let a = n.cover_map(l, u); // nu x nl
        let b = m.cover_map(l, u); // mu x ml
                                   // (A f_l - f_u B)[r][c] = 0 for r < nu, c < ml
        for r in 0..nu {
            for c in 0..ml {
                let mut row = Vec::new();
                for k in 0..nl {
                    let v = a.get(r, k);
                    if !f.is_zero(v) {
                        row.push((ol + k * ml + c, v.clone()));
                    }
                }
                for k in 0..mu {
                    let v = b.get(k, c);
                    if !f.is_zero(v) {
                        row.push((ou + r * mu + k, f.neg(v)));
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut sys = Matrix::zeros(f, rows.len(), layout.total);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row {
            let cur = sys.get(i, j).clone();
            sys.set(i, j, f.add(&cur, &v));
        }
    }
    let k = sys.kernel_matrix();
    (layout, k)
}

fn unpack<F: Field>(
    m: &RModule<F>,
    n: &RModule<F>,
    layout: &Layout,
    v: &[F::Elem],
) -> ModuleMap<F> {
    let f = m.field();
    let maps = (0..m.dims().len())
        .map(|x| {
            let mut mat = Matrix::zeros(f, n.dim(x), m.dim(x));
            if let Some(o) = layout.offset[x] {
                for r in 0..n.dim(x) {
                    for c in 0..m.dim(x) {
                        mat.set(r, c, v[o + r * m.dim(x) + c].clone());
                    }
                }
            }
            mat
        })
        .collect();
    ModuleMap { maps }
}

/// `Hom_R(M, N)` by solving the commutation conditions on every cover.
pub fn hom_space<F: Field>(m: &RModule<F>, n: &RModule<F>) -> Result<HomSpace<F>> {
    if !same_poset(m.poset(), n.poset()) {
        return Err(Error::PosetMismatch);
    }
    let mut all = FixedBitSet::with_capacity(m.dims().len());
    all.insert_range(..);
    let (layout, k) = hom_kernel(m, n, &all);
    let basis = k
        .columns()
        .iter()
        .map(|v| unpack(m, n, &layout, v))
        .collect();
    Ok(HomSpace {
        dim: k.cols(),
        basis,
    })
}

/// `uHom(M, N)_x = Hom(M_{>=x}, N)` with restriction as the action.
pub fn u_hom<F: Field>(m: &RModule<F>, n: &RModule<F>) -> Result<RModule<F>> {
    if !same_poset(m.poset(), n.poset()) {
        return Err(Error::PosetMismatch);
    }
    let p = m.poset();
    let f = m.field();
    let parts: Vec<(Layout, Matrix<F>)> =
        (0..p.len()).map(|x| hom_kernel(m, n, p.above(x))).collect();
    let dims = parts.iter().map(|(_, k)| k.cols()).collect();
    RModule::from_fn(f, p, dims, |l, u| {
        let (ll, kl) = &parts[l];
        let (lu, ku) = &parts[u];
        // restrict each basis map at l to the cells above u
        let mut image = Matrix::zeros(f, lu.total, kl.cols());
        for x in p.above(u).ones() {
            let (Some(src), Some(dst)) = (ll.offset[x], lu.offset[x]) else {
                continue;
            };
            for t in 0..n.dim(x) * m.dim(x) {
                for c in 0..kl.cols() {
                    let v = kl.get(src + t, c);
                    if !f.is_zero(v) {
                        image.set(dst + t, c, v.clone());
                    }
                }
            }
        }
        ku.solve_matrix(&image)
            .expect("restriction of a module map is a module map")
    })
}

/// Termwise `uHom(M, N•)`, cohomology per element. For a complex of
/// injectives this is `R uHom(M, N•)`. Every term is solved with the
/// generic Hom system; the differential is post-composition with `N•`.
pub fn u_hom_complex_table<F: Field>(
    m: &RModule<F>,
    n: &ModuleComplex<F>,
) -> Result<CohomologyTable> {
    if !same_poset(m.poset(), n.poset()) {
        return Err(Error::PosetMismatch);
    }
    let p = m.poset();
    let f = m.field();
    let mut table = CohomologyTable::new(p.labels().to_vec());
    for x in 0..p.len() {
        let support = p.above(x);
        let parts: Vec<(Layout, Matrix<F>)> = n
            .modules()
            .iter()
            .map(|nj| hom_kernel(m, nj, support))
            .collect();
        let diffs = (0..parts.len() - 1)
            .map(|k| {
                let deg = n.min_degree() + k as i32;
                let d = n.diff(deg).expect("in range");
                let (src_n, dst_n) = (&n.modules()[k], &n.modules()[k + 1]);
                let (ls, ks) = &parts[k];
                let (lt, kt) = &parts[k + 1];
                let mut image = Matrix::zeros(f, lt.total, ks.cols());
                for y in support.ones() {
                    let (os, ot) = (
                        ls.offset[y].expect("in support"),
                        lt.offset[y].expect("in support"),
                    );
                    let my = m.dim(y);
                    let dy = &d.maps[y];
                    for col in 0..ks.cols() {
                        for r2 in 0..dst_n.dim(y) {
                            for c in 0..my {
                                let mut acc = f.zero();
                                for r in 0..src_n.dim(y) {
                                    let a = dy.get(r2, r);
                                    if !f.is_zero(a) {
                                        acc = f.add(&acc, &f.mul(a, ks.get(os + r * my + c, col)));
                                    }
                                }
                                image.set(ot + r2 * my + c, col, acc);
                            }
                        }
                    }
                }
                kt.solve_matrix(&image)
                    .expect("a composite of module maps is a module map")
            })
            .collect();
        let dims = parts.iter().map(|(_, k)| k.cols()).collect();
        let vc = VectorComplex::new_unchecked(f, n.min_degree(), dims, diffs).expect("shapes");
        for (d, v) in vc.cohomology() {
            table.add(d, x, v);
        }
    }
    Ok(table)
}

/// A complex whose terms are direct sums of blocks, one per generator cell,
/// with a block size each.
struct BlockComplex<F: Field> {
    field: F,
    min_degree: i32,
    cells: Vec<Vec<usize>>,
    sizes: Vec<Vec<usize>>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> BlockComplex<F> {
    fn coords(&self, k: usize, keep: &impl Fn(usize) -> bool) -> Vec<usize> {
        let mut out = Vec::new();
        let mut off = 0;
        for (&c, &s) in self.cells[k].iter().zip(&self.sizes[k]) {
            if keep(c) {
                out.extend(off..off + s);
            }
            off += s;
        }
        out
    }

    fn restricted(&self, keep: impl Fn(usize) -> bool) -> VectorComplex<F> {
        let idx: Vec<Vec<usize>> = (0..self.cells.len())
            .map(|k| self.coords(k, &keep))
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
}

/// Memoized actions `M(x -> y)`.
struct ActCache<'a, F: Field> {
    m: &'a RModule<F>,
    cache: HashMap<(usize, usize), Matrix<F>>,
}

impl<'a, F: Field> ActCache<'a, F> {
    fn new(m: &'a RModule<F>) -> Self {
        ActCache {
            m,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, x: usize, y: usize) -> &Matrix<F> {
        let m = self.m;
        self.cache.entry((x, y)).or_insert_with(|| m.act(x, y))
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut s = 0;
    for &x in sizes {
        out.push(s);
        s += x;
    }
    out
}

/// `Hom(M, I•)` for an injective sum complex, using
/// `Hom(X, E(σ)) ≅ (X_σ)^∨`: generator `σ` contributes `M_σ^∨` and a
/// coefficient `c` from `E(σ')` to `E(σ)` induces `c · M(σ -> σ')^T`.
/// Evaluating at `x` keeps the generators `σ >= x`, which is `uHom(M, I•)_x`.
fn hom_into_injectives<F: Field>(m: &RModule<F>, inj: &SumComplex<F>) -> BlockComplex<F> {
    debug_assert_eq!(inj.kind(), SumKind::Injective);
    let f = m.field();
    let mut acts = ActCache::new(m);
    let cells: Vec<Vec<usize>> = inj.all_gens().to_vec();
    let sizes: Vec<Vec<usize>> = cells
        .iter()
        .map(|gs| gs.iter().map(|&g| m.dim(g)).collect())
        .collect();
    let diffs = inj
        .diffs()
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let (ot, os) = (offsets(&sizes[k + 1]), offsets(&sizes[k]));
            let rows: usize = sizes[k + 1].iter().sum();
            let cols: usize = sizes[k].iter().sum();
            let mut out = Matrix::zeros(f, rows, cols);
            for (i, &t) in cells[k + 1].iter().enumerate() {
                for (j, &s) in cells[k].iter().enumerate() {
                    let c = d.get(i, j);
                    if f.is_zero(c) || m.dim(t) == 0 || m.dim(s) == 0 {
                        continue;
                    }
                    let block = acts.get(t, s).transpose().scale(c);
                    out.put_block(ot[i], os[j], &block);
                }
            }
            out
        })
        .collect();
    BlockComplex {
        field: f.clone(),
        min_degree: inj.min_degree(),
        cells,
        sizes,
        diffs,
    }
}

/// `Hom(P•, N)` for a projective sum complex in degrees `<= 0`, using
/// `Hom(Re_σ, N) ≅ N_σ`. `Hom(P^{-i}, N)` sits in degree `i`.
fn hom_from_projectives<F: Field>(proj: &SumComplex<F>, n: &RModule<F>) -> BlockComplex<F> {
    debug_assert_eq!(proj.kind(), SumKind::Projective);
    let f = n.field();
    let mut acts = ActCache::new(n);
    let cells: Vec<Vec<usize>> = proj.all_gens().iter().rev().cloned().collect();
    let sizes: Vec<Vec<usize>> = cells
        .iter()
        .map(|gs| gs.iter().map(|&g| n.dim(g)).collect())
        .collect();
    // slot k holds P^{-(max - k)}: reversed order, so the coefficient matrix
    // of P^{a} -> P^{a+1} is transposed into Hom(P^{a+1}) -> Hom(P^{a})
    let pd: Vec<&Matrix<F>> = proj.diffs().iter().rev().collect();
    let diffs = pd
        .iter()
        .enumerate()
        .map(|(k, d)| {
            // d: gens(slot k+1) -> gens(slot k), target x source
            let (ot, os) = (offsets(&sizes[k + 1]), offsets(&sizes[k]));
            let rows: usize = sizes[k + 1].iter().sum();
            let cols: usize = sizes[k].iter().sum();
            let mut out = Matrix::zeros(f, rows, cols);
            for (i, &src) in cells[k + 1].iter().enumerate() {
                for (j, &tgt) in cells[k].iter().enumerate() {
                    let c = d.get(j, i);
                    if f.is_zero(c) || n.dim(src) == 0 || n.dim(tgt) == 0 {
                        continue;
                    }
                    let block = acts.get(tgt, src).scale(c);
                    out.put_block(ot[i], os[j], &block);
                }
            }
            out
        })
        .collect();
    BlockComplex {
        field: f.clone(),
        min_degree: -proj.max_degree(),
        cells,
        sizes,
        diffs,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Resolve the second argument by injectives.
    Injective,
    /// Resolve the first argument by projectives.
    Projective,
}

/// `dim Ext^i_R(M, N)` for every `i`.
pub fn ext<F: Field>(m: &RModule<F>, n: &RModule<F>, route: Route) -> Result<Betti> {
    if !same_poset(m.poset(), n.poset()) {
        return Err(Error::PosetMismatch);
    }
    Ok(match route {
        Route::Injective => hom_into_injectives(m, &min_injective_resolution(n))
            .restricted(|_| true)
            .cohomology(),
        Route::Projective => hom_from_projectives(&min_projective_resolution(m).complex, n)
            .restricted(|_| true)
            .cohomology(),
    })
}

/// `dim uExt^i_R(M, N)_x` for every `i` and `x`. The projective route
/// computes `uHom(P•, N)` and agrees with the injective route on
/// meet-semilattices; elsewhere it is refused unless
/// `allow_non_semilattice` is set.
pub fn u_ext<F: Field>(
    m: &RModule<F>,
    n: &RModule<F>,
    route: Route,
    allow_non_semilattice: bool,
) -> Result<CohomologyTable> {
    if !same_poset(m.poset(), n.poset()) {
        return Err(Error::PosetMismatch);
    }
    let p = m.poset();
    let mut table = CohomologyTable::new(p.labels().to_vec());
    match route {
        Route::Injective => {
            let blocks = hom_into_injectives(m, &min_injective_resolution(n));
            for x in 0..p.len() {
                for (d, v) in blocks.restricted(|g| p.leq(x, g)).cohomology() {
                    table.add(d, x, v);
                }
            }
        }
        Route::Projective => {
            if !allow_non_semilattice {
                if let Some((a, b)) = p.meet_semilattice_witness() {
                    return Err(Error::NotSemilattice(p.label(a).into(), p.label(b).into()));
                }
            }
            let res = min_projective_resolution(m);
            for x in 0..p.len() {
                for (d, v) in u_hom_from_projectives_at(&res.complex, n, x).cohomology() {
                    table.add(d, x, v);
                }
            }
        }
    }
    Ok(table)
}

/// A generator's region, the offsets of its cells and its family basis.
type Family<F> = (Vec<usize>, Vec<usize>, Matrix<F>);

/// Compatible families `(n_y)_{y ∈ U}` with `n_v = N(u -> v) n_u` on covers
/// inside `U`, as columns in the coordinates `⊕_{y ∈ U} N_y` (ascending
/// `y`). This is `Hom(k_U, N)` for an upward closed `U`.
fn families<F: Field>(n: &RModule<F>, set: &[usize]) -> (Vec<usize>, Matrix<F>) {
    let f = n.field();
    let p = n.poset();
    let mut off = vec![usize::MAX; p.len()];
    let mut total = 0;
    for &y in set {
        off[y] = total;
        total += n.dim(y);
    }
    let mut eqs: Vec<Vec<(usize, F::Elem)>> = Vec::new();
    for &(l, u) in p.covers() {
        if off[l] == usize::MAX || off[u] == usize::MAX {
            continue;
        }
        let a = n.cover_map(l, u);
        for r in 0..n.dim(u) {
            let mut row = vec![(off[u] + r, f.neg(&f.one()))];
            for c in 0..n.dim(l) {
                let v = a.get(r, c);
                if !f.is_zero(v) {
                    row.push((off[l] + c, v.clone()));
                }
            }
            eqs.push(row);
        }
    }
    let mut sys = Matrix::zeros(f, eqs.len(), total);
    for (i, row) in eqs.into_iter().enumerate() {
        for (j, v) in row {
            sys.set(i, j, v);
        }
    }
    (off, sys.kernel_matrix())
}

/// `uHom(P•, N)_x` where `(Re_σ)_{>=x}` is `k` on `↑σ ∩ ↑x`.
fn u_hom_from_projectives_at<F: Field>(
    proj: &SumComplex<F>,
    n: &RModule<F>,
    x: usize,
) -> VectorComplex<F> {
    let f = n.field();
    let p = n.poset();
    let region = |g: usize| -> Vec<usize> {
        let mut s = p.above(g).clone();
        s.intersect_with(p.above(x));
        s.ones().collect()
    };
    let slots: Vec<Vec<usize>> = proj.all_gens().iter().rev().cloned().collect();
    let fams: Vec<Vec<Family<F>>> = slots
        .iter()
        .map(|gs| {
            gs.iter()
                .map(|&g| {
                    let set = region(g);
                    let (off, k) = families(n, &set);
                    (set, off, k)
                })
                .collect()
        })
        .collect();
    let sizes: Vec<Vec<usize>> = fams
        .iter()
        .map(|v| v.iter().map(|(_, _, k)| k.cols()).collect())
        .collect();
    let pd: Vec<&Matrix<F>> = proj.diffs().iter().rev().collect();
    let diffs = pd
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let (ot, os) = (offsets(&sizes[k + 1]), offsets(&sizes[k]));
            let rows: usize = sizes[k + 1].iter().sum();
            let cols: usize = sizes[k].iter().sum();
            let mut out = Matrix::zeros(f, rows, cols);
            for (i, (src_set, src_off, src_k)) in fams[k + 1].iter().enumerate() {
                for (j, (_, tgt_off, tgt_k)) in fams[k].iter().enumerate() {
                    let c = d.get(j, i);
                    if f.is_zero(c) || src_k.cols() == 0 || tgt_k.cols() == 0 {
                        continue;
                    }
                    // restrict each target family to the (smaller) source region
                    let src_len = src_k.rows();
                    let mut image = Matrix::zeros(f, src_len, tgt_k.cols());
                    for &y in src_set {
                        for t in 0..n.dim(y) {
                            for col in 0..tgt_k.cols() {
                                let v = tgt_k.get(tgt_off[y] + t, col);
                                if !f.is_zero(v) {
                                    image.set(src_off[y] + t, col, f.mul(v, c));
                                }
                            }
                        }
                    }
                    let block = src_k.solve_matrix(&image).expect("restricted family");
                    out.put_block(ot[i], os[j], &block);
                }
            }
            out
        })
        .collect();
    VectorComplex::new_unchecked(
        f,
        -proj.max_degree(),
        sizes.iter().map(|s| s.iter().sum()).collect(),
        diffs,
    )
    .expect("shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcomplex::EMPTY;
    use crate::field::Rationals;
    use crate::fixtures;

    #[test]
    fn reproducing_properties() {
        let t = fixtures::triangle_boundary();
        let p = t.poset_arc();
        let e = t.require("1-2").unwrap();
        let n = RModule::projective(&Rationals, p, EMPTY);
        assert_eq!(
            hom_space(&RModule::projective(&Rationals, p, e), &n)
                .unwrap()
                .dim,
            1
        );
        let inj = RModule::injective(&Rationals, p, e);
        assert_eq!(hom_space(&inj, &inj).unwrap().dim, 1);
        let s = RModule::simple(&Rationals, p, EMPTY);
        // Γ_∅(Re_∅) = 0 on the circle
        assert_eq!(hom_space(&s, &n).unwrap().dim, 0);
        assert_eq!(hom_space(&s, &s).unwrap().dim, 1);
    }

    #[test]
    fn u_hom_with_empty_is_hom() {
        let d = fixtures::disc2();
        let p = d.poset_arc();
        let m = RModule::projective(&Rationals, p, EMPTY);
        let sigma = d.require("sigma").unwrap();
        let n = RModule::injective(&Rationals, p, sigma);
        let u = u_hom(&m, &n).unwrap();
        u.check_path_independence().unwrap();
        assert_eq!(u.dim(EMPTY), hom_space(&m, &n).unwrap().dim);
        // uHom(M, E(σ)) ≅ E(σ) ⊗ M_σ^∨ dimensionwise
        assert_eq!(u.dims(), n.dims());
    }

    #[test]
    fn disc_counterexample() {
        let d = fixtures::disc2();
        let p = d.poset_arc();
        let rho1 = d.require("rho1").unwrap();
        let rho2 = d.require("rho2").unwrap();
        let sigma = d.require("sigma").unwrap();
        let m = RModule::projective(&Rationals, p, rho1);
        let n = RModule::simple(&Rationals, p, sigma);
        let inj = u_ext(&m, &n, Route::Injective, false).unwrap();
        assert_eq!(inj.get(1, rho2), 1);
        assert!(matches!(
            u_ext(&m, &n, Route::Projective, false),
            Err(Error::NotSemilattice(_, _))
        ));
        let proj = u_ext(&m, &n, Route::Projective, true).unwrap();
        assert_eq!(proj.get(1, rho2), 0);
    }

    #[test]
    fn ext_routes_agree_on_simples() {
        let d = fixtures::disc2();
        let p = d.poset_arc();
        for x in 0..d.len() {
            for y in 0..d.len() {
                let a = RModule::simple(&Rationals, p, x);
                let b = RModule::simple(&Rationals, p, y);
                assert_eq!(
                    ext(&a, &b, Route::Injective).unwrap(),
                    ext(&a, &b, Route::Projective).unwrap()
                );
            }
        }
    }
}
