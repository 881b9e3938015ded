//! Seeded random modules for property tests and the self test.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::poset::Poset;

use super::module::RModule;

/// A random module with `dim M_x <= max_dim`.
///
/// Elements are visited along a linear extension. At `y` the cover maps
/// `M_x -> M_y` are drawn row by row from the solutions of the
/// path-independence equations against everything already built below `y`,
/// so the result is a module without any repair step.
pub fn random_module<F: Field>(
    field: &F,
    poset: &Arc<Poset>,
    seed: u64,
    max_dim: usize,
) -> RModule<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = (0..poset.len())
        .map(|_| rng.gen_range(0..=max_dim))
        .collect();
    let n = poset.len();
    // act[z][y] = M(z -> y) for z <= y, filled as y is reached
    let mut act: Vec<Vec<Option<Matrix<F>>>> = vec![vec![None; n]; n];
    let mut cover_maps: Vec<Option<Matrix<F>>> = vec![None; poset.covers().len()];

    for &y in poset.linear_extension() {
        act[y][y] = Some(Matrix::identity(field, dims[y]));
        let lower = poset.lower_covers(y);
        if lower.is_empty() {
            continue;
        }
        let mut offset = Vec::with_capacity(lower.len());
        let mut width = 0;
        for &x in lower {
            offset.push(width);
            width += dims[x];
        }
        // one unknown row vector a = (a_x) per row of the new maps;
        // for z below two covers x1, x2: a_{x1} M(z->x1) = a_{x2} M(z->x2)
        let mut eqs: Vec<Vec<F::Elem>> = Vec::new();
        for z in poset.below(y).ones().filter(|&z| z != y) {
            let over: Vec<usize> = (0..lower.len())
                .filter(|&i| poset.leq(z, lower[i]))
                .collect();
            for w in over.windows(2) {
                let (i, j) = (w[0], w[1]);
                let a = act[z][lower[i]].as_ref().expect("built below");
                let b = act[z][lower[j]].as_ref().expect("built below");
                for c in 0..dims[z] {
                    let mut row = vec![field.zero(); width];
                    for r in 0..dims[lower[i]] {
                        row[offset[i] + r] = a.get(r, c).clone();
                    }
                    for r in 0..dims[lower[j]] {
                        row[offset[j] + r] = field.neg(b.get(r, c));
                    }
                    eqs.push(row);
                }
            }
        }
        let sys = Matrix::from_columns(field, width, &eqs).transpose();
        let sys = if eqs.is_empty() {
            Matrix::zeros(field, 0, width)
        } else {
            sys
        };
        let kernel = sys.kernel_basis();
        let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(dims[y]);
        for _ in 0..dims[y] {
            let mut v = vec![field.zero(); width];
            for k in &kernel {
                let c = field.from_i64(rng.gen_range(-2..=2));
                if field.is_zero(&c) {
                    continue;
                }
                for (t, e) in k.iter().enumerate() {
                    v[t] = field.add(&v[t], &field.mul(&c, e));
                }
            }
            rows.push(v);
        }
        for (i, &x) in lower.iter().enumerate() {
            let mut m = Matrix::zeros(field, dims[y], dims[x]);
            for (r, row) in rows.iter().enumerate() {
                for c in 0..dims[x] {
                    m.set(r, c, row[offset[i] + c].clone());
                }
            }
            cover_maps[poset.cover_id(x, y).expect("cover")] = Some(m);
        }
        // composites from everything below y, through the first cover above z
        for z in poset.below(y).ones().filter(|&z| z != y) {
            let i = (0..lower.len())
                .find(|&i| poset.leq(z, lower[i]))
                .expect("z < y");
            let x = lower[i];
            let m = cover_maps[poset.cover_id(x, y).expect("cover")]
                .as_ref()
                .expect("set");
            let via = act[z][x].as_ref().expect("built below");
            act[z][y] = Some(m.mul(via));
        }
    }
    let maps = cover_maps
        .into_iter()
        .map(|m| m.expect("every cover visited"))
        .collect();
    RModule::new_unchecked(field, poset, dims, maps).expect("random module shapes")
}
