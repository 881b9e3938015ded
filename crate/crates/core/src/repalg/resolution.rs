//! Minimal projective and injective resolutions.

use std::sync::Arc;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::poset::Poset;

use super::module::RModule;
use super::sums::{SumComplex, SumKind};

/// A minimal projective resolution `P^{-n} -> ... -> P^0 (-> M)`, stored as
/// a projective sum complex in degrees `-n..=0`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution<F: Field> {
    pub complex: SumComplex<F>,
    /// `augmentation[x]` maps `P^0_x` onto `M_x`.
    pub augmentation: Vec<Matrix<F>>,
}

impl<F: Field> ProjectiveResolution<F> {
    pub fn length(&self) -> usize {
        (-self.complex.min_degree()) as usize
    }

    /// Generator cells of `P^{-i}`.
    pub fn gens(&self, i: usize) -> &[usize] {
        self.complex.gens(-(i as i32))
    }
}

/// Generators of `M / rad M`: at each element, standard basis vectors
/// completing the span of all incoming cover images.
fn top_generators<F: Field>(m: &RModule<F>) -> Vec<(usize, usize)> {
    let p = m.poset();
    let f = m.field();
    let mut out = Vec::new();
    for &y in p.linear_extension() {
        let n = m.dim(y);
        if n == 0 {
            continue;
        }
        let mut rad = Matrix::zeros(f, n, 0);
        for &x in p.lower_covers(y) {
            rad = rad.hstack(m.cover_map(x, y));
        }
        let r = rad.cols();
        let joined = rad.hstack(&Matrix::identity(f, n));
        for c in joined.independent_columns() {
            if c >= r {
                out.push((y, c - r));
            }
        }
    }
    out
}

/// Evaluates the projective cover map `⊕ Re_y -> M` at every element.
/// Column `g` at `x` is the image of generator `g` (zero-width when the
/// generator is absent); returns, per element, the generator indices present
/// and the matrix with those columns.
fn cover_map_at<F: Field>(m: &RModule<F>, gens: &[(usize, usize)]) -> Vec<(Vec<usize>, Matrix<F>)> {
    let p = m.poset();
    let f = m.field();
    let mut images: Vec<Vec<Option<Vec<F::Elem>>>> = vec![vec![None; gens.len()]; p.len()];
    for &x in p.linear_extension() {
        for (g, &(y, b)) in gens.iter().enumerate() {
            if !p.leq(y, x) {
                continue;
            }
            let v = if y == x {
                let mut v = vec![f.zero(); m.dim(x)];
                v[b] = f.one();
                v
            } else {
                let z = *p
                    .lower_covers(x)
                    .iter()
                    .find(|&&z| p.leq(y, z))
                    .expect("chain of covers");
                let prev = images[z][g].as_ref().expect("processed earlier");
                m.cover_map(z, x).mul_vec(prev)
            };
            images[x][g] = Some(v);
        }
    }
    (0..p.len())
        .map(|x| {
            let idx: Vec<usize> = (0..gens.len())
                .filter(|&g| images[x][g].is_some())
                .collect();
            let cols: Vec<Vec<F::Elem>> = idx
                .iter()
                .map(|&g| images[x][g].clone().expect("present"))
                .collect();
            let mat = Matrix::from_columns(f, m.dim(x), &cols);
            (idx, mat)
        })
        .collect()
}

pub fn min_projective_resolution<F: Field>(m: &RModule<F>) -> ProjectiveResolution<F> {
    let p = m.poset().clone();
    let f = m.field().clone();

    let mut gens_per_step: Vec<Vec<usize>> = Vec::new();
    let mut diffs_down: Vec<Matrix<F>> = Vec::new();
    let mut augmentation = Vec::new();

    let mut cur = m.clone();
    // columns of emb[x] express cur_x inside the previous projective term
    let mut emb: Option<Vec<Matrix<F>>> = None;
    let mut prev_present: Vec<Vec<usize>> = Vec::new();
    let mut prev_count = 0usize;

    loop {
        let gens = top_generators(&cur);
        let cover = cover_map_at(&cur, &gens);

        match &emb {
            None => {
                augmentation = cover.iter().map(|(_, mat)| mat.clone()).collect();
            }
            Some(e) => {
                // generator g at y sends e_y to emb[y] * (basis vector b)
                let mut d = Matrix::zeros(&f, prev_count, gens.len());
                for (g, &(y, b)) in gens.iter().enumerate() {
                    for (i, &pg) in prev_present[y].iter().enumerate() {
                        let v = e[y].get(i, b);
                        if !f.is_zero(v) {
                            d.set(pg, g, v.clone());
                        }
                    }
                }
                diffs_down.push(d);
            }
        }
        gens_per_step.push(gens.iter().map(|&(y, _)| y).collect());
        if gens.is_empty() {
            break;
        }

        // kernel of the cover map, as a submodule of the projective term
        let kernels: Vec<Matrix<F>> = cover.iter().map(|(_, mat)| mat.kernel_matrix()).collect();
        let present: Vec<Vec<usize>> = cover.into_iter().map(|(idx, _)| idx).collect();
        let dims: Vec<usize> = kernels.iter().map(Matrix::cols).collect();
        if dims.iter().all(|&d| d == 0) {
            break;
        }
        let next = RModule::from_fn(&f, &p, dims, |l, u| {
            // P's action on a basis vector of K_l, then coordinates in K_u
            let (pl, pu) = (&present[l], &present[u]);
            let mut image = Matrix::zeros(&f, pu.len(), kernels[l].cols());
            for (j, g) in pl.iter().enumerate() {
                let i = pu
                    .binary_search(g)
                    .expect("projective generators persist upward");
                for c in 0..kernels[l].cols() {
                    let v = kernels[l].get(j, c);
                    if !f.is_zero(v) {
                        image.set(i, c, v.clone());
                    }
                }
            }
            kernels[u]
                .solve_matrix(&image)
                .expect("kernel is a submodule")
        })
        .expect("kernel module");
        prev_count = gens.len();
        prev_present = present;
        emb = Some(kernels);
        cur = next;
    }

    // gens_per_step[i] is P^{-i}; diffs_down[i] maps P^{-i-1} -> P^{-i}
    let n = gens_per_step.len();
    let mut gens_by_degree = gens_per_step;
    if n > 1 && gens_by_degree.last().is_some_and(Vec::is_empty) {
        gens_by_degree.pop();
    }
    let len = gens_by_degree.len();
    diffs_down.truncate(len.saturating_sub(1));
    gens_by_degree.reverse();
    diffs_down.reverse();
    let complex = SumComplex::new_unchecked(
        &f,
        &p,
        SumKind::Projective,
        -(len as i32 - 1),
        gens_by_degree,
        diffs_down,
    )
    .expect("resolution shapes");
    ProjectiveResolution {
        complex,
        augmentation,
    }
}

/// A minimal injective resolution `0 -> M -> I^0 -> I^1 -> ...`, obtained by
/// dualizing a minimal projective resolution of `Hom_k(M, k)` over the
/// opposite poset.
pub fn min_injective_resolution<F: Field>(m: &RModule<F>) -> SumComplex<F> {
    let opposite = Arc::new(m.poset().opposite());
    min_injective_resolution_with(m, &opposite)
}

pub fn min_injective_resolution_with<F: Field>(
    m: &RModule<F>,
    opposite: &Arc<Poset>,
) -> SumComplex<F> {
    let dual = m.k_dual_onto(opposite);
    let res = min_projective_resolution(&dual);
    res.complex.k_dual_onto(m.poset())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcomplex::EMPTY;
    use crate::field::Rationals;
    use crate::fixtures;
    use crate::linalg::Betti;

    fn labels(c: &crate::cellcomplex::CellComplex, cells: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = cells.iter().map(|&x| c.label(x).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn projectives_resolve_in_one_step() {
        let t = fixtures::triangle_boundary();
        let e = t.require("1-2").unwrap();
        let r = min_projective_resolution(&RModule::projective(&Rationals, t.poset_arc(), e));
        assert_eq!(r.length(), 0);
        assert_eq!(r.gens(0), &[e]);
    }

    #[test]
    fn simple_at_empty_on_the_circle() {
        let t = fixtures::triangle_boundary();
        let s = RModule::simple(&Rationals, t.poset_arc(), EMPTY);
        let r = min_projective_resolution(&s);
        assert_eq!(r.length(), 2);
        assert_eq!(labels(&t, r.gens(0)), vec!["@empty"]);
        assert_eq!(labels(&t, r.gens(1)), vec!["1", "2", "3"]);
        assert_eq!(labels(&t, r.gens(2)), vec!["1-2", "1-3", "2-3"]);
        assert!(r.complex.is_minimal());
        // exact except in degree 0, where the cohomology is the simple itself
        let h = r.complex.cohomology_table();
        assert_eq!(h, s.dims_table(0));
    }

    #[test]
    fn injective_resolution_of_the_top_simple_of_the_disc() {
        let d = fixtures::disc2();
        let sigma = d.require("sigma").unwrap();
        let s = RModule::simple(&Rationals, d.poset_arc(), sigma);
        let i = min_injective_resolution(&s);
        assert_eq!(i.min_degree(), 0);
        assert_eq!(labels(&d, i.gens(0)), vec!["sigma"]);
        assert_eq!(labels(&d, i.gens(1)), vec!["tau1", "tau2"]);
        assert_eq!(labels(&d, i.gens(2)), vec!["rho1", "rho2"]);
        assert_eq!(labels(&d, i.gens(3)), vec!["@empty"]);
        assert!(i.is_minimal());
        assert_eq!(i.cohomology_table(), s.dims_table(0));
    }

    #[test]
    fn injectives_resolve_in_one_step() {
        let d = fixtures::disc2();
        let tau = d.require("tau1").unwrap();
        let i = min_injective_resolution(&RModule::injective(&Rationals, d.poset_arc(), tau));
        assert_eq!(i.max_degree(), 0);
        assert_eq!(i.gens(0), &[tau]);
    }

    #[test]
    fn zero_module_resolves_to_zero() {
        let d = fixtures::disc2();
        let r = min_projective_resolution(&RModule::zero(&Rationals, d.poset_arc()));
        assert!(r.complex.is_zero());
        assert_eq!(r.complex.cohomology_at(EMPTY), Betti::new());
    }
}
