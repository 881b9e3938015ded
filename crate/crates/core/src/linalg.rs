//! Dense exact matrices and cochain complexes of vector spaces.
//!
//! Elimination always pivots on the first nonzero entry of a column and keeps
//! row order otherwise, so bases coming out of this module are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// A column vector over `F`.
pub type Vector<F> = Vec<<F as Field>::Elem>;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.render(self.get(r, c)))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_elems(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from integer rows. Panics on ragged input; intended
    /// for literals.
    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix literal");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vector<F>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !self.field.is_zero(v) {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let next = f.add(cur, &f.mul(a, b));
                    out.set(i, j, next);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                let v = self.get(r, c);
                if !self.field.is_zero(v) {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                if !self.field.is_zero(v) {
                    self.set(r0 + r, c0 + c, v.clone());
                }
            }
        }
    }

    fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        eliminate(&self.field, &mut rows, self.cols, false).len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = eliminate(&self.field, &mut rows, self.cols, true);
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for row in rows {
            data.extend(row);
        }
        (
            Matrix {
                field: self.field.clone(),
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    /// A basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector<F>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = r.get(i, free);
                if !f.is_zero(e) {
                    v[p] = f.neg(e);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel basis as the columns of a `cols x nullity` matrix.
    pub fn kernel_matrix(&self) -> Self {
        Self::from_columns(&self.field, self.cols, &self.kernel_basis())
    }

    /// Indices of columns forming a basis of the column space (first
    /// independent columns, left to right).
    pub fn independent_columns(&self) -> Vec<usize> {
        let (_, pivots) = self.rref();
        pivots
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vector<F>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut rows = self.to_rows();
        for (row, bi) in rows.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let pivots = eliminate(f, &mut rows, self.cols + 1, true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Some(x)
    }

    /// Solves `self * X = rhs` column by column; `None` if any column is
    /// outside the column space.
    pub fn solve_matrix(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(rhs.rows, self.rows);
        let f = &self.field;
        let mut rows = self.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.extend_from_slice(rhs.row(i));
        }
        let pivots = eliminate(f, &mut rows, self.cols, true);
        // rows beyond the pivots must vanish on the right-hand side
        for row in rows.iter().skip(pivots.len()) {
            if row[self.cols..].iter().any(|x| !f.is_zero(x)) {
                return None;
            }
        }
        let mut x = Self::zeros(f, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                let v = &rows[i][self.cols + c];
                if !f.is_zero(v) {
                    x.set(p, c, v.clone());
                }
            }
        }
        Some(x)
    }
}

/// In-place Gaussian elimination on `rows` restricted to the first
/// `pivot_cols` columns. Pivot choice: first row (in current order) with a
/// nonzero entry. With `reduced`, entries above pivots are cleared and pivots
/// normalized to one. Returns pivot columns; pivot rows end up first.
fn eliminate<F: Field>(
    f: &F,
    rows: &mut [Vec<F::Elem>],
    pivot_cols: usize,
    reduced: bool,
) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..pivot_cols {
        if next == n {
            break;
        }
        let Some(p) = (next..n).find(|&r| !f.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(next, p);
        let inv = f.inv(&rows[next][c]);
        if !f.is_one(&inv) {
            for x in rows[next][c..].iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
        }
        let (head, tail) = rows.split_at_mut(next + 1);
        let pivot_row = &head[next];
        let nz: Vec<usize> = (c..pivot_row.len())
            .filter(|&j| !f.is_zero(&pivot_row[j]))
            .collect();
        for row in tail.iter_mut() {
            clear_with(f, row, pivot_row, c, &nz);
        }
        if reduced {
            let (above, rest) = rows.split_at_mut(next);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                clear_with(f, row, pivot_row, c, &nz);
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

#[inline]
fn clear_with<F: Field>(f: &F, row: &mut [F::Elem], pivot_row: &[F::Elem], c: usize, nz: &[usize]) {
    if f.is_zero(&row[c]) {
        return;
    }
    let factor = row[c].clone();
    for &j in nz {
        row[j] = f.sub_mul(&row[j], &factor, &pivot_row[j]);
    }
}

/// A bounded cochain complex of finite dimensional vector spaces:
/// `C^lo -> C^{lo+1} -> ... -> C^hi`.
#[derive(Clone, Debug)]
pub struct VectorComplex<F: Field> {
    field: F,
    min_degree: i32,
    dims: Vec<usize>,
    /// `diffs[k]` maps degree `min_degree + k` to `min_degree + k + 1`.
    diffs: Vec<Matrix<F>>,
}

/// Nonzero dimensions indexed by degree.
pub type Betti = BTreeMap<i32, usize>;

impl<F: Field> VectorComplex<F> {
    /// Checks shapes and that consecutive differentials compose to zero.
    pub fn new(
        field: &F,
        min_degree: i32,
        dims: Vec<usize>,
        diffs: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(field, min_degree, dims, diffs)?;
        for k in 1..c.diffs.len() {
            if !c.diffs[k].mul(&c.diffs[k - 1]).is_zero() {
                return Err(Error::NotNilpotent(min_degree + k as i32 - 1));
            }
        }
        Ok(c)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        field: &F,
        min_degree: i32,
        dims: Vec<usize>,
        diffs: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                dims.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::Shape(format!(
                    "differential at degree {} is {}x{}, expected {}x{}",
                    min_degree + k as i32,
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        Ok(VectorComplex {
            field: field.clone(),
            min_degree,
            dims,
            diffs,
        })
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, degree: i32) -> usize {
        let k = degree - self.min_degree;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    pub fn differential(&self, degree: i32) -> Option<&Matrix<F>> {
        let k = degree - self.min_degree;
        if k < 0 {
            None
        } else {
            self.diffs.get(k as usize)
        }
    }

    /// `dim H^i = dim ker d^i - rank d^{i-1}` for every degree; zero entries
    /// are omitted.
    pub fn cohomology(&self) -> Betti {
        let ranks: Vec<usize> = self.diffs.iter().map(Matrix::rank).collect();
        let mut out = Betti::new();
        for (k, &n) in self.dims.iter().enumerate() {
            let out_rank = ranks.get(k).copied().unwrap_or(0);
            let in_rank = if k > 0 { ranks[k - 1] } else { 0 };
            let h = n - out_rank - in_rank;
            if h > 0 {
                out.insert(self.min_degree + k as i32, h);
            }
        }
        out
    }

    /// Cycles, boundaries and a complement of the boundaries inside the
    /// cycles at one degree, all as column matrices in the ambient basis.
    pub fn cohomology_basis(&self, degree: i32) -> CohomologyBasis<F> {
        let n = self.dim(degree);
        let field = &self.field;
        let cycles = match self.differential(degree) {
            Some(d) => d.kernel_matrix(),
            None => Matrix::identity(field, n),
        };
        let boundaries = match self.differential(degree - 1) {
            Some(d) if degree > self.min_degree => {
                let idx = d.independent_columns();
                let all: Vec<usize> = (0..d.rows()).collect();
                d.select(&all, &idx)
            }
            _ => Matrix::zeros(field, n, 0),
        };
        CohomologyBasis::from_parts(boundaries, cycles)
    }
}

/// Data needed to compute induced maps on cohomology at one degree.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<F: Field> {
    /// Independent boundary vectors (columns).
    pub boundaries: Matrix<F>,
    /// Representatives of a basis of cycles / boundaries (columns).
    pub representatives: Matrix<F>,
    /// `[boundaries | representatives]`, a basis of the cycles.
    pub cycle_basis: Matrix<F>,
}

impl<F: Field> CohomologyBasis<F> {
    fn from_parts(boundaries: Matrix<F>, cycles: Matrix<F>) -> Self {
        let joined = boundaries.hstack(&cycles);
        let pivots = joined.independent_columns();
        let b = boundaries.cols();
        let reps: Vec<usize> = pivots.iter().copied().filter(|&c| c >= b).collect();
        let all: Vec<usize> = (0..joined.rows()).collect();
        let representatives = joined.select(&all, &reps);
        let cycle_basis = boundaries.hstack(&representatives);
        CohomologyBasis {
            boundaries,
            representatives,
            cycle_basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    /// Coordinates of a cycle in the cohomology basis (boundary part dropped).
    pub fn class_of(&self, cycle: &[F::Elem]) -> Option<Vector<F>> {
        let x = self.cycle_basis.solve(cycle)?;
        Some(x[self.boundaries.cols()..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(&q(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(&q(), 3, 4).rank(), 0);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(Matrix::from_i64_rows(&f2, &[&[1, 1], &[1, 1]]).rank(), 1);
        // over Q the same matrix pattern with a sign is rank 2
        assert_eq!(Matrix::from_i64_rows(&q(), &[&[1, 1], &[1, -1]]).rank(), 2);
        assert_eq!(Matrix::from_i64_rows(&f2, &[&[1, 1], &[1, -1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(&q(), 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(&q(), 2, 3).kernel_basis().len(), 3);
        let k = Matrix::from_i64_rows(&q(), &[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![q().from_i64(-1), q().from_i64(1)]);
    }

    #[test]
    fn solve_roundtrip() {
        let a = Matrix::from_i64_rows(&q(), &[&[2, 1, 0], &[0, 1, 1], &[2, 2, 1]]);
        let b = vec![q().from_i64(3), q().from_i64(2), q().from_i64(5)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let inconsistent = vec![q().from_i64(3), q().from_i64(2), q().from_i64(6)];
        assert!(a.solve(&inconsistent).is_none());
        let rhs = Matrix::from_i64_rows(&q(), &[&[3, 1], &[2, 0], &[5, 1]]);
        let x = a.solve_matrix(&rhs).unwrap();
        assert_eq!(a.mul(&x), rhs);
    }

    #[test]
    fn complex_cohomology_examples() {
        let f = q();
        // 0 -> k -> 0 placed in degree 1
        let c = VectorComplex::new(&f, 1, vec![1], vec![]).unwrap();
        assert_eq!(c.cohomology(), Betti::from([(1, 1)]));
        let c = VectorComplex::new(&f, 0, vec![1, 1], vec![Matrix::identity(&f, 1)]).unwrap();
        assert!(c.cohomology().is_empty());
        // cellular cochains of the triangle boundary: vertices a,b,c; edges ab, bc, ac
        let delta = Matrix::from_i64_rows(&f, &[&[-1, 1, 0], &[0, -1, 1], &[-1, 0, 1]]);
        let c = VectorComplex::new(&f, 0, vec![3, 3], vec![delta]).unwrap();
        assert_eq!(c.cohomology(), Betti::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn rejects_non_complex() {
        let f = q();
        let one = Matrix::identity(&f, 1);
        let err = VectorComplex::new(&f, -1, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert_eq!(err, Error::NotNilpotent(-1));
    }

    #[test]
    fn cohomology_representatives() {
        let f = q();
        let delta = Matrix::from_i64_rows(&f, &[&[-1, 1, 0], &[0, -1, 1], &[-1, 0, 1]]);
        let c = VectorComplex::new(&f, 0, vec![3, 3], vec![delta]).unwrap();
        let b1 = c.cohomology_basis(1);
        assert_eq!(b1.dim(), 1);
        assert_eq!(b1.boundaries.cols(), 2);
        let b0 = c.cohomology_basis(0);
        assert_eq!(b0.dim(), 1);
        let ones = vec![f.one(); 3];
        assert_eq!(b0.class_of(&ones).unwrap().len(), 1);
    }
}
