//! Regular cell complexes encoded by their face poset and an incidence
//! function ε.
//!
//! The empty cell is always index 0 and is labelled [`EMPTY_LABEL`].
//! Validation covers the combinatorial consequences of regularity: grading,
//! the diamond property, the ε axioms, and sphere homology of every cell
//! boundary. Topological regularity itself is out of reach; a poset passing
//! all of these checks is accepted.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::field::{sign, Field, PrimeField, Rationals};
use crate::io::PosetFile;
use crate::linalg::{Betti, Matrix, VectorComplex};
use crate::poset::Poset;

pub const EMPTY_LABEL: &str = "@empty";
/// Index of the empty cell in every complex.
pub const EMPTY: usize = 0;

pub const MAX_FACET_VERTICES: usize = 12;
pub const MAX_CELLS: usize = 4096;

/// An interval `bottom < mid[0], mid[1] < top` of length two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub bottom: usize,
    pub mid: [usize; 2],
    pub top: usize,
}

#[derive(Clone, Debug)]
struct Simplicial {
    /// Sorted vertex (0-cell) indices of each cell.
    vertices: Vec<Vec<usize>>,
    by_vertices: HashMap<Vec<usize>, usize>,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    poset: Arc<Poset>,
    opposite: Arc<Poset>,
    dims: Vec<i32>,
    /// Aligned with `poset.covers()`.
    eps: Vec<i8>,
    by_dim: Vec<Vec<usize>>,
    simplicial: Option<Simplicial>,
}

/// Vertex order: integers numerically first, then other names lexically.
fn vertex_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

fn check_vertex_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name.starts_with('@')
        || name.contains('-')
        || name.contains(',')
        || name.chars().any(char::is_whitespace);
    if bad {
        Err(Error::InvalidVertexName(name.to_string()))
    } else {
        Ok(())
    }
}

impl CellComplex {
    /// The simplicial complex generated by `facets`. Facets contained in
    /// other facets are dropped with a warning. Simplices are labelled by
    /// their sorted vertices joined with `-`; ε follows the sorted-vertex
    /// convention `ε(σ, σ∖{v_i}) = (-1)^{i+1}`.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyInput("no facets"));
        }
        let mut names: BTreeSet<&str> = BTreeSet::new();
        let mut clean: Vec<Vec<&str>> = Vec::with_capacity(facets.len());
        for f in facets {
            let mut vs: Vec<&str> = f.iter().map(AsRef::as_ref).collect();
            if vs.is_empty() {
                return Err(Error::EmptyInput("facet without vertices"));
            }
            for v in &vs {
                check_vertex_name(v)?;
            }
            vs.sort_by(|a, b| vertex_cmp(a, b));
            vs.dedup();
            if vs.len() > MAX_FACET_VERTICES {
                return Err(Error::FacetTooLarge {
                    size: vs.len(),
                    max: MAX_FACET_VERTICES,
                });
            }
            names.extend(vs.iter().copied());
            clean.push(vs);
        }
        let mut vnames: Vec<&str> = names.into_iter().collect();
        vnames.sort_by(|a, b| vertex_cmp(a, b));
        let vid: HashMap<&str, usize> = vnames.iter().enumerate().map(|(i, v)| (*v, i)).collect();

        let sets: Vec<Vec<usize>> = clean
            .iter()
            .map(|f| f.iter().map(|v| vid[v]).collect())
            .collect();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        let mut dropped = 0;
        for (i, f) in sets.iter().enumerate() {
            let redundant = sets.iter().enumerate().any(|(j, g)| {
                j != i && g.len() >= f.len() && is_subset(f, g) && (g.len() > f.len() || j < i)
            });
            if redundant {
                dropped += 1;
            } else {
                kept.push(f.clone());
            }
        }
        if dropped > 0 {
            log::warn!("dropped {dropped} facet(s) contained in other facets");
        }

        let mut total = 0usize;
        for f in &kept {
            total = total.saturating_add(1usize << f.len());
        }
        if total > MAX_CELLS * 64 {
            return Err(Error::TooManyCells {
                count: total,
                max: MAX_CELLS,
            });
        }
        let mut simplices: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for f in &kept {
            for mask in 0u32..(1u32 << f.len()) {
                let s: Vec<usize> = (0..f.len())
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| f[i])
                    .collect();
                simplices.insert((s.len(), s));
            }
            if simplices.len() > MAX_CELLS {
                return Err(Error::TooManyCells {
                    count: simplices.len(),
                    max: MAX_CELLS,
                });
            }
        }
        let simplices: Vec<Vec<usize>> = simplices.into_iter().map(|(_, s)| s).collect();
        let by_vertices: HashMap<Vec<usize>, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let labels: Vec<String> = simplices
            .iter()
            .map(|s| {
                if s.is_empty() {
                    EMPTY_LABEL.to_string()
                } else {
                    s.iter().map(|&v| vnames[v]).collect::<Vec<_>>().join("-")
                }
            })
            .collect();
        let dims: Vec<i32> = simplices.iter().map(|s| s.len() as i32 - 1).collect();
        let mut rel = Vec::new();
        let mut signs = HashMap::new();
        for (i, s) in simplices.iter().enumerate() {
            for k in 0..s.len() {
                let mut face = s.clone();
                face.remove(k);
                let j = by_vertices[&face];
                rel.push((j, i));
                signs.insert((j, i), if k % 2 == 0 { 1i8 } else { -1 });
            }
        }
        let poset = Poset::from_relations(labels, &rel)?;
        let eps = poset.covers().iter().map(|c| signs[c]).collect();
        // vertex ids of the simplicial structure are cell indices of 0-cells
        let vertex_cell: Vec<usize> = (0..vnames.len()).map(|v| by_vertices[&vec![v]]).collect();
        let vertices: Vec<Vec<usize>> = simplices
            .iter()
            .map(|s| s.iter().map(|&v| vertex_cell[v]).collect())
            .collect();
        let by_vertices = vertices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let simplicial = Simplicial {
            vertices,
            by_vertices,
        };
        Ok(Self::assemble(poset, dims, eps, Some(simplicial)))
    }

    /// Builds and validates a complex from a poset description. When the
    /// file carries no ε one is solved for.
    pub fn from_poset_file(file: &PosetFile) -> Result<Self> {
        if file.cells.is_empty() {
            return Err(Error::EmptyInput("no cells"));
        }
        let mut labels = vec![EMPTY_LABEL.to_string()];
        let mut dims = vec![-1i32];
        let mut idx: HashMap<&str, usize> = HashMap::new();
        for c in &file.cells {
            if c.id == EMPTY_LABEL {
                return Err(Error::ReservedCell);
            }
            if c.id.is_empty() {
                return Err(Error::Parse("empty cell id".into()));
            }
            if idx.insert(c.id.as_str(), labels.len()).is_some() {
                return Err(Error::DuplicateCell(c.id.clone()));
            }
            if c.dim < 0 {
                return Err(Error::Grading {
                    lower: EMPTY_LABEL.into(),
                    upper: c.id.clone(),
                    detail: format!("cell dimension {} is negative", c.dim),
                });
            }
            labels.push(c.id.clone());
            dims.push(c.dim);
        }
        if labels.len() > MAX_CELLS {
            return Err(Error::TooManyCells {
                count: labels.len(),
                max: MAX_CELLS,
            });
        }
        let lookup = |s: &str| -> Result<usize> {
            if s == EMPTY_LABEL {
                return Err(Error::ReservedCell);
            }
            idx.get(s)
                .copied()
                .ok_or_else(|| Error::UnknownCell(s.to_string()))
        };
        let mut rel = Vec::with_capacity(file.covers.len());
        let mut has_lower = vec![false; labels.len()];
        for [lo, up] in &file.covers {
            let (l, u) = (lookup(lo)?, lookup(up)?);
            rel.push((l, u));
            has_lower[u] = true;
        }
        for (c, &has) in has_lower.iter().enumerate().skip(1) {
            if !has {
                rel.push((EMPTY, c));
            }
        }
        let poset = Poset::from_relations(labels, &rel)?;
        let mut cx = Self::assemble(poset, dims, Vec::new(), None);
        cx.check_grading()?;
        cx.check_diamonds()?;

        cx.eps = match &file.epsilon {
            Some(entries) => {
                let mut eps = vec![0i8; cx.poset.covers().len()];
                for e in entries {
                    let u = lookup(&e.upper)?;
                    let l = if e.lower == EMPTY_LABEL {
                        EMPTY
                    } else {
                        lookup(&e.lower)?
                    };
                    let k = cx.poset.cover_id(l, u).ok_or_else(|| {
                        Error::Epsilon(format!(
                            "sign given for ({}, {}) which is not a cover",
                            e.upper, e.lower
                        ))
                    })?;
                    if e.sign != 1 && e.sign != -1 {
                        return Err(Error::Epsilon(format!(
                            "sign {} for ({}, {}) is not ±1",
                            e.sign, e.upper, e.lower
                        )));
                    }
                    if eps[k] != 0 && eps[k] != e.sign as i8 {
                        return Err(Error::Epsilon(format!(
                            "conflicting signs for ({}, {})",
                            e.upper, e.lower
                        )));
                    }
                    eps[k] = e.sign as i8;
                }
                for (k, &(l, u)) in cx.poset.covers().iter().enumerate() {
                    if eps[k] == 0 {
                        if l == EMPTY {
                            eps[k] = 1;
                        } else {
                            return Err(Error::Epsilon(format!(
                                "no sign given for the cover ({}, {})",
                                cx.label(u),
                                cx.label(l)
                            )));
                        }
                    }
                }
                eps
            }
            None => cx.solve_epsilon()?,
        };
        cx.check_epsilon(&cx.eps)?;
        cx.check_spheres()?;
        cx.simplicial = cx.detect_simplicial();
        Ok(cx)
    }

    fn assemble(
        poset: Poset,
        dims: Vec<i32>,
        eps: Vec<i8>,
        simplicial: Option<Simplicial>,
    ) -> Self {
        let max = dims.iter().copied().max().unwrap_or(-1);
        let mut by_dim = vec![Vec::new(); (max + 2) as usize];
        for (c, &d) in dims.iter().enumerate() {
            if d >= -1 {
                by_dim[(d + 1) as usize].push(c);
            }
        }
        let opposite = Arc::new(poset.opposite());
        CellComplex {
            poset: Arc::new(poset),
            opposite,
            dims,
            eps,
            by_dim,
            simplicial,
        }
    }

    /// Runs every validation check: grading, diamonds, ε axioms, sphere
    /// homology of cell boundaries.
    pub fn validate(&self) -> Result<()> {
        self.check_grading()?;
        self.check_diamonds()?;
        self.check_epsilon(&self.eps)?;
        self.check_spheres()
    }

    fn check_grading(&self) -> Result<()> {
        if self.poset.label(EMPTY) != EMPTY_LABEL || self.dims[EMPTY] != -1 {
            return Err(Error::Invariant(
                "empty cell must be index 0 with dimension -1".into(),
            ));
        }
        for c in 0..self.len() {
            if !self.poset.leq(EMPTY, c) {
                return Err(Error::Grading {
                    lower: EMPTY_LABEL.into(),
                    upper: self.label(c).into(),
                    detail: "cell is not above the empty cell".into(),
                });
            }
        }
        for &(l, u) in self.poset.covers() {
            if self.dims[u] != self.dims[l] + 1 {
                return Err(Error::Grading {
                    lower: self.label(l).into(),
                    upper: self.label(u).into(),
                    detail: format!(
                        "cover raises dimension from {} to {}",
                        self.dims[l], self.dims[u]
                    ),
                });
            }
        }
        Ok(())
    }

    fn check_diamonds(&self) -> Result<()> {
        for bottom in 0..self.len() {
            for top in self.poset.above(bottom).ones() {
                if self.dims[top] - self.dims[bottom] != 2 {
                    continue;
                }
                let middle: Vec<usize> = self
                    .poset
                    .interval(bottom, top)
                    .into_iter()
                    .filter(|&m| m != bottom && m != top)
                    .collect();
                if middle.len() != 2 {
                    return Err(Error::Diamond {
                        lower: self.label(bottom).into(),
                        upper: self.label(top).into(),
                        middle: middle.iter().map(|&m| self.label(m).to_string()).collect(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Every length-two interval. Assumes the diamond property.
    pub fn diamonds(&self) -> Vec<Diamond> {
        let mut out = Vec::new();
        for bottom in 0..self.len() {
            for top in self.poset.above(bottom).ones() {
                if self.dims[top] - self.dims[bottom] != 2 {
                    continue;
                }
                let mid: Vec<usize> = self
                    .poset
                    .upper_covers(bottom)
                    .iter()
                    .copied()
                    .filter(|&m| self.poset.leq(m, top))
                    .collect();
                if mid.len() == 2 {
                    out.push(Diamond {
                        bottom,
                        mid: [mid[0], mid[1]],
                        top,
                    });
                }
            }
        }
        out
    }

    fn check_epsilon(&self, eps: &[i8]) -> Result<()> {
        if eps.len() != self.poset.covers().len() {
            return Err(Error::Epsilon(
                "sign count does not match cover count".into(),
            ));
        }
        for (k, &(l, u)) in self.poset.covers().iter().enumerate() {
            if eps[k] != 1 && eps[k] != -1 {
                return Err(Error::Epsilon(format!(
                    "ε({}, {}) = {} is not ±1",
                    self.label(u),
                    self.label(l),
                    eps[k]
                )));
            }
            if l == EMPTY && eps[k] != 1 {
                return Err(Error::Epsilon(format!(
                    "ε({}, {EMPTY_LABEL}) must be 1",
                    self.label(u)
                )));
            }
        }
        let e = |u: usize, l: usize| eps[self.poset.cover_id(l, u).expect("cover")] as i32;
        for d in self.diamonds() {
            let [a, b] = d.mid;
            let s = e(d.top, a) * e(a, d.bottom) + e(d.top, b) * e(b, d.bottom);
            if s != 0 {
                return Err(Error::Epsilon(format!(
                    "diamond {} < {{{}, {}}} < {} violates the sign rule",
                    self.label(d.bottom),
                    self.label(a),
                    self.label(b),
                    self.label(d.top)
                )));
            }
        }
        Ok(())
    }

    /// Solves for an incidence function on the current covers, ignoring any
    /// stored signs: writing ε = (-1)^x, each diamond gives one GF(2)
    /// equation and covers of the empty cell are pinned to x = 0.
    pub fn solve_epsilon(&self) -> Result<Vec<i8>> {
        let covers = self.poset.covers();
        let mut var = vec![usize::MAX; covers.len()];
        let mut nvars = 0;
        for (k, &(l, _)) in covers.iter().enumerate() {
            if l != EMPTY {
                var[k] = nvars;
                nvars += 1;
            }
        }
        let diamonds = self.diamonds();
        let f2 = PrimeField::new(2).expect("2 is prime");
        let mut a = Matrix::zeros(&f2, diamonds.len(), nvars);
        let rhs = vec![1u32; diamonds.len()];
        for (r, d) in diamonds.iter().enumerate() {
            let [m1, m2] = d.mid;
            for (l, u) in [(m1, d.top), (d.bottom, m1), (m2, d.top), (d.bottom, m2)] {
                let k = self.poset.cover_id(l, u).expect("diamond edge is a cover");
                if var[k] != usize::MAX {
                    let cur = *a.get(r, var[k]);
                    a.set(r, var[k], cur ^ 1);
                }
            }
        }
        let x = a.solve(&rhs).ok_or(Error::NoIncidenceFunction)?;
        Ok((0..covers.len())
            .map(|k| {
                if var[k] != usize::MAX && x[var[k]] == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect())
    }

    /// The same complex with a different incidence function, validated.
    pub fn with_epsilon(&self, eps: Vec<i8>) -> Result<Self> {
        self.check_epsilon(&eps)?;
        let mut c = self.clone();
        c.eps = eps;
        Ok(c)
    }

    fn check_spheres(&self) -> Result<()> {
        let q = Rationals;
        let f2 = PrimeField::new(2).expect("2 is prime");
        for c in 0..self.len() {
            let d = self.dims[c];
            if d < 1 {
                continue;
            }
            let mut bd = self.poset.below(c).clone();
            bd.set(c, false);
            for found in [
                self.cochain_complex(&q, &bd).cohomology(),
                self.cochain_complex(&f2, &bd).cohomology(),
            ] {
                let expected = Betti::from([(d - 1, 1)]);
                if found != expected {
                    return Err(Error::SphereHomology {
                        cell: self.label(c).into(),
                        expected: d - 1,
                        found: format!("{found:?}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn detect_simplicial(&self) -> Option<Simplicial> {
        let vertices: Vec<Vec<usize>> = (0..self.len())
            .map(|c| {
                self.poset
                    .below(c)
                    .ones()
                    .filter(|&v| self.dims[v] == 0)
                    .collect()
            })
            .collect();
        let mut by_vertices = HashMap::new();
        for (c, vs) in vertices.iter().enumerate() {
            let d = self.dims[c];
            if vs.len() as i32 != d + 1 {
                return None;
            }
            if self.poset.below(c).count_ones(..) != 1usize << vs.len() {
                return None;
            }
            if by_vertices.insert(vs.clone(), c).is_some() {
                return None;
            }
        }
        Some(Simplicial {
            vertices,
            by_vertices,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// The face poset with the order reversed (the empty cell on top).
    pub fn opposite_arc(&self) -> &Arc<Poset> {
        &self.opposite
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn label(&self, c: usize) -> &str {
        self.poset.label(c)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.poset.require(label)
    }

    pub fn dim(&self, c: usize) -> i32 {
        self.dims[c]
    }

    pub fn dims(&self) -> &[i32] {
        &self.dims
    }

    /// `d = max dim σ`.
    pub fn max_dim(&self) -> i32 {
        self.by_dim.len() as i32 - 2
    }

    pub fn cells_of_dim(&self, d: i32) -> &[usize] {
        if d < -1 || d > self.max_dim() {
            &[]
        } else {
            &self.by_dim[(d + 1) as usize]
        }
    }

    /// The incidence number `ε(upper, lower)`, or 0 when not a cover.
    pub fn eps(&self, upper: usize, lower: usize) -> i8 {
        self.poset.cover_id(lower, upper).map_or(0, |k| self.eps[k])
    }

    pub fn epsilon(&self) -> &[i8] {
        &self.eps
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial.is_some()
    }

    /// Vertex cells of a simplex, when the complex is simplicial.
    pub fn vertex_set(&self, c: usize) -> Option<&[usize]> {
        self.simplicial.as_ref().map(|s| s.vertices[c].as_slice())
    }

    /// The simplex with the given vertex cells, if present.
    pub fn simplex(&self, vertices: &[usize]) -> Option<usize> {
        let s = self.simplicial.as_ref()?;
        let mut v = vertices.to_vec();
        v.sort_unstable();
        v.dedup();
        s.by_vertices.get(&v).copied()
    }

    /// `χ̃ = Σ_σ (-1)^{dim σ}` over all cells including the empty one.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|&d| if d.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn cell_set(&self, cells: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for c in cells {
            s.insert(c);
        }
        s
    }

    /// Cochain complex of the cells in `set` with coboundary
    /// `δτ = Σ ε(σ, τ) σ`. Including the empty cell gives the augmented
    /// (reduced) complex.
    pub fn cochain_complex<F: Field>(&self, field: &F, set: &FixedBitSet) -> VectorComplex<F> {
        let cells: Vec<usize> = set.ones().collect();
        let lo = cells.iter().map(|&c| self.dims[c]).min().unwrap_or(0);
        let hi = cells.iter().map(|&c| self.dims[c]).max().unwrap_or(-1);
        let mut per: Vec<Vec<usize>> = Vec::new();
        for d in lo..=hi {
            per.push(
                self.cells_of_dim(d)
                    .iter()
                    .copied()
                    .filter(|&c| set.contains(c))
                    .collect(),
            );
        }
        let mut diffs = Vec::new();
        for k in 1..per.len() {
            let mut m = Matrix::zeros(field, per[k].len(), per[k - 1].len());
            for (i, &s) in per[k].iter().enumerate() {
                for (j, &t) in per[k - 1].iter().enumerate() {
                    let e = self.eps(s, t);
                    if e != 0 {
                        m.set(i, j, sign(field, e));
                    }
                }
            }
            diffs.push(m);
        }
        let dims = per.iter().map(Vec::len).collect();
        VectorComplex::new_unchecked(field, lo, dims, diffs).expect("shapes agree by construction")
    }

    pub fn whole(&self) -> Subcomplex {
        Subcomplex {
            cells: self.cell_set(0..self.len()),
        }
    }

    /// Validates a downward-closed cell set. The empty cell is added.
    pub fn subcomplex(&self, set: &FixedBitSet) -> Result<Subcomplex> {
        let mut cells = set.clone();
        cells.grow(self.len());
        cells.insert(EMPTY);
        self.poset
            .check_ideal(&cells)
            .map_err(|(m, x)| Error::NotSubcomplex {
                member: self.label(m).into(),
                missing: self.label(x).into(),
            })?;
        Ok(Subcomplex { cells })
    }

    /// Validates an order filter: upward closed and without the empty cell.
    pub fn filter(&self, set: &FixedBitSet) -> Result<OrderFilter> {
        let mut cells = set.clone();
        cells.grow(self.len());
        if cells.contains(EMPTY) {
            return Err(Error::EmptyCellInFilter);
        }
        self.poset
            .check_filter(&cells)
            .map_err(|(m, x)| Error::NotFilter {
                member: self.label(m).into(),
                missing: self.label(x).into(),
            })?;
        Ok(OrderFilter { cells })
    }

    /// Upward closure of `set` as a filter.
    pub fn filter_closure(&self, set: &FixedBitSet) -> Result<OrderFilter> {
        let mut s = set.clone();
        s.grow(self.len());
        self.filter(&self.poset.up_closure(&s))
    }

    /// `{τ : τ ≥ σ}` for `σ ≠ ∅`.
    pub fn open_star(&self, c: usize) -> Result<OrderFilter> {
        self.filter(self.poset.above(c))
    }

    /// Every nonempty cell: the whole space as an open region.
    pub fn punctured(&self) -> OrderFilter {
        let mut cells = self.cell_set(0..self.len());
        cells.set(EMPTY, false);
        OrderFilter { cells }
    }

    /// `σ̄ = {τ : τ ≤ σ}`.
    pub fn closure(&self, c: usize) -> Subcomplex {
        Subcomplex {
            cells: self.poset.below(c).clone(),
        }
    }

    /// `del(σ) = {τ : τ ≱ σ}`.
    pub fn deletion(&self, c: usize) -> Subcomplex {
        let mut cells = self.cell_set(0..self.len());
        cells.difference_with(self.poset.above(c));
        cells.insert(EMPTY);
        Subcomplex { cells }
    }

    fn require_simplicial(&self, what: &str) -> Result<&Simplicial> {
        self.simplicial
            .as_ref()
            .ok_or_else(|| Error::NotSimplicial(what.to_string()))
    }

    /// `st(σ) = {τ : τ ∪ σ ∈ Σ}`.
    pub fn star(&self, c: usize) -> Result<Subcomplex> {
        let s = self.require_simplicial("star")?;
        let cells = (0..self.len()).filter(|&t| self.union_cell(s, c, t).is_some());
        Ok(Subcomplex {
            cells: self.cell_set(cells),
        })
    }

    /// `lk(σ) = {τ ∈ st(σ) : τ ∩ σ = ∅}`.
    pub fn link(&self, c: usize) -> Result<Subcomplex> {
        let s = self.require_simplicial("link")?;
        let cells = (0..self.len()).filter(|&t| {
            s.vertices[t].iter().all(|v| !s.vertices[c].contains(v))
                && self.union_cell(s, c, t).is_some()
        });
        Ok(Subcomplex {
            cells: self.cell_set(cells),
        })
    }

    fn union_cell(&self, s: &Simplicial, a: usize, b: usize) -> Option<usize> {
        let mut v = s.vertices[a].clone();
        v.extend_from_slice(&s.vertices[b]);
        v.sort_unstable();
        v.dedup();
        s.by_vertices.get(&v).copied()
    }

    /// Betti numbers of a region. Closed regions give ordinary and reduced
    /// homology; open regions need `compact_support` and give compactly
    /// supported cohomology of the restricted cochain model.
    pub fn cellular_homology<F: Field>(
        &self,
        field: &F,
        region: &Region,
        compact_support: bool,
    ) -> Result<HomologyReport> {
        match region {
            Region::Closed(sub) => {
                let mut unreduced = sub.cells.clone();
                unreduced.set(EMPTY, false);
                Ok(HomologyReport {
                    betti: self.cochain_complex(field, &unreduced).cohomology(),
                    reduced: self.cochain_complex(field, &sub.cells).cohomology(),
                })
            }
            Region::Open(filter) => {
                if !compact_support {
                    return Err(Error::OpenRegionNeedsCompact);
                }
                let b = self.cochain_complex(field, &filter.cells).cohomology();
                Ok(HomologyReport {
                    betti: b.clone(),
                    reduced: b,
                })
            }
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// A downward-closed set of cells, always containing the empty cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    cells: FixedBitSet,
}

impl Subcomplex {
    pub fn cells(&self) -> &FixedBitSet {
        &self.cells
    }
    pub fn contains(&self, c: usize) -> bool {
        self.cells.contains(c)
    }
    pub fn len(&self) -> usize {
        self.cells.count_ones(..)
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An upward-closed set of nonempty cells; its union is an open set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderFilter {
    cells: FixedBitSet,
}

impl OrderFilter {
    pub fn cells(&self) -> &FixedBitSet {
        &self.cells
    }
    pub fn contains(&self, c: usize) -> bool {
        self.cells.contains(c)
    }
    pub fn len(&self) -> usize {
        self.cells.count_ones(..)
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub enum Region {
    Closed(Subcomplex),
    Open(OrderFilter),
}

/// Betti numbers by degree; `reduced` uses the augmented complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub betti: Betti,
    pub reduced: Betti,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn facet_complex_sizes() {
        let t = fixtures::triangle_boundary();
        assert_eq!(t.len(), 7);
        assert_eq!(t.max_dim(), 1);
        assert!(t.is_simplicial());
        let s = fixtures::simplex2();
        assert_eq!(s.len(), 8);
        let rp2 = fixtures::rp2();
        assert_eq!(rp2.len(), 1 + 6 + 15 + 10);
    }

    #[test]
    fn vertex_order_convention() {
        let s = fixtures::simplex2();
        let t = s.require("1-2-3").unwrap();
        assert_eq!(s.eps(t, s.require("2-3").unwrap()), 1);
        assert_eq!(s.eps(t, s.require("1-3").unwrap()), -1);
        assert_eq!(s.eps(t, s.require("1-2").unwrap()), 1);
        let v = s.require("2").unwrap();
        assert_eq!(s.eps(v, EMPTY), 1);
        // numeric before lexical
        let c = CellComplex::from_facets(&[vec!["10", "9", "a"]]).unwrap();
        assert!(c.require("9-10-a").is_ok());
    }

    #[test]
    fn redundant_facets_are_dropped() {
        let c = CellComplex::from_facets(&[vec!["1", "2", "3"], vec!["1", "2"]]).unwrap();
        assert_eq!(c.len(), 8);
    }

    #[test]
    fn bad_inputs() {
        let none: Vec<Vec<&str>> = vec![];
        assert!(matches!(
            CellComplex::from_facets(&none),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            CellComplex::from_facets(&[vec!["a-b"]]),
            Err(Error::InvalidVertexName(_))
        ));
        let big: Vec<String> = (0..13).map(|i| i.to_string()).collect();
        assert!(matches!(
            CellComplex::from_facets(&[big]),
            Err(Error::FacetTooLarge { .. })
        ));
    }

    #[test]
    fn disc_poset_is_valid_and_not_simplicial() {
        let d = fixtures::disc2();
        d.validate().unwrap();
        assert!(!d.is_simplicial());
        assert_eq!(d.max_dim(), 2);
    }

    #[test]
    fn square_boundary_is_a_circle() {
        let sq = fixtures::square_boundary();
        let h = sq
            .cellular_homology(&Rationals, &Region::Closed(sq.whole()), false)
            .unwrap();
        assert_eq!(h.betti, Betti::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn three_middle_cells_is_a_diamond_error() {
        let json = r#"{"cells":[{"id":"a","dim":0},{"id":"b","dim":0},{"id":"c","dim":0},{"id":"e","dim":1}],
            "covers":[["a","e"],["b","e"],["c","e"]]}"#;
        let f: PosetFile = serde_json::from_str(json).unwrap();
        assert!(matches!(
            CellComplex::from_poset_file(&f),
            Err(Error::Diamond { .. })
        ));
    }

    #[test]
    fn missing_face_is_a_grading_error() {
        let json = r#"{"cells":[{"id":"a","dim":0},{"id":"e","dim":1}],"covers":[["a","e"]]}"#;
        let f: PosetFile = serde_json::from_str(json).unwrap();
        // the edge has one vertex: its interval over the empty cell has one middle cell
        assert!(matches!(
            CellComplex::from_poset_file(&f),
            Err(Error::Diamond { .. })
        ));
        let json = r#"{"cells":[{"id":"e","dim":1}],"covers":[]}"#;
        let f: PosetFile = serde_json::from_str(json).unwrap();
        assert!(matches!(
            CellComplex::from_poset_file(&f),
            Err(Error::Grading { .. })
        ));
    }

    #[test]
    fn wrong_signs_are_rejected() {
        let d = fixtures::disc2();
        let mut eps = d.epsilon().to_vec();
        let s = d.require("sigma").unwrap();
        let t1 = d.require("tau1").unwrap();
        eps[d.poset().cover_id(t1, s).unwrap()] *= -1;
        assert!(matches!(d.with_epsilon(eps), Err(Error::Epsilon(_))));
    }

    #[test]
    fn solved_signs_satisfy_every_diamond() {
        for c in fixtures::all() {
            let eps = c.complex.solve_epsilon().unwrap();
            c.complex.with_epsilon(eps).unwrap();
        }
        let t = fixtures::triangle_boundary();
        assert_eq!(t.diamonds().len(), 3);
    }

    #[test]
    fn pinched_boundary_fails_sphere_check() {
        // two edges on the same pair of vertices glued to one 2-cell per side:
        // the boundary of "big" is a circle plus an extra edge, not a circle
        let json = r#"{"cells":[{"id":"a","dim":0},{"id":"b","dim":0},
            {"id":"e1","dim":1},{"id":"e2","dim":1},{"id":"e3","dim":1},{"id":"big","dim":2}],
            "covers":[["a","e1"],["b","e1"],["a","e2"],["b","e2"],["a","e3"],["b","e3"],
                      ["e1","big"],["e2","big"],["e3","big"]]}"#;
        let f: PosetFile = serde_json::from_str(json).unwrap();
        let err = CellComplex::from_poset_file(&f).unwrap_err();
        assert!(matches!(
            err,
            Error::Diamond { .. } | Error::SphereHomology { .. }
        ));
    }

    #[test]
    fn stars_links_deletions() {
        let t = fixtures::triangle_boundary();
        let v = t.require("1").unwrap();
        let lk = t.link(v).unwrap();
        let h = t
            .cellular_homology(&Rationals, &Region::Closed(lk.clone()), false)
            .unwrap();
        assert_eq!(lk.len(), 3);
        assert_eq!(h.betti, Betti::from([(0, 2)]));
        let s = fixtures::simplex2();
        let v = s.require("1").unwrap();
        let del = s.deletion(v);
        let labels: Vec<&str> = del.cells().ones().map(|c| s.label(c)).collect();
        assert_eq!(labels, vec![EMPTY_LABEL, "2", "3", "2-3"]);
        let d = fixtures::disc2();
        let sigma = d.require("sigma").unwrap();
        assert_eq!(d.open_star(sigma).unwrap().len(), 1);
        assert!(matches!(d.link(sigma), Err(Error::NotSimplicial(_))));
    }

    #[test]
    fn homology_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let rp2 = fixtures::rp2();
        let whole = Region::Closed(rp2.whole());
        assert_eq!(
            rp2.cellular_homology(&f2, &whole, false).unwrap().betti,
            Betti::from([(0, 1), (1, 1), (2, 1)])
        );
        assert_eq!(
            rp2.cellular_homology(&Rationals, &whole, false)
                .unwrap()
                .betti,
            Betti::from([(0, 1)])
        );
        let s = fixtures::simplex2();
        let h = s
            .cellular_homology(&Rationals, &Region::Closed(s.whole()), false)
            .unwrap();
        assert_eq!(h.betti, Betti::from([(0, 1)]));
        assert!(h.reduced.is_empty());
        let open = Region::Open(s.punctured());
        assert!(matches!(
            s.cellular_homology(&Rationals, &open, false),
            Err(Error::OpenRegionNeedsCompact)
        ));
    }

    #[test]
    fn filters_are_checked() {
        let t = fixtures::triangle_boundary();
        let v = t.require("1").unwrap();
        let err = t.filter(&t.cell_set([v])).unwrap_err();
        assert!(matches!(err, Error::NotFilter { .. }));
        assert!(matches!(
            t.filter(&t.cell_set([EMPTY])),
            Err(Error::EmptyCellInFilter)
        ));
        assert_eq!(t.filter_closure(&t.cell_set([v])).unwrap().len(), 3);
    }
}
