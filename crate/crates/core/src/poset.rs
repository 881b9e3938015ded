//! Finite posets with a materialized transitive closure.

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::cellcomplex::CellComplex;
use crate::error::{Error, Result};

/// Name of the element added by [`Poset::adjoin_top`].
pub const TOP_LABEL: &str = "@top";

#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    cover_index: HashMap<(usize, usize), usize>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    /// `above[x]` holds every `y >= x`.
    above: Vec<FixedBitSet>,
    /// `below[y]` holds every `x <= y`.
    below: Vec<FixedBitSet>,
    order: Vec<usize>,
    mobius_rows: Vec<OnceLock<Vec<i64>>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from strict relations `lower < upper`, given by index.
    /// Relations implied by transitivity are dropped with a warning.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateCell(l.clone()));
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(lo, up) in relations {
            if lo >= n || up >= n {
                return Err(Error::Parse(format!("relation ({lo}, {up}) out of range")));
            }
            if lo == up {
                return Err(Error::Cyclic(labels[lo].clone()));
            }
            if !succ[lo].contains(&up) {
                succ[lo].push(up);
                indeg[up] += 1;
            }
        }

        // Kahn's algorithm, smallest index first for a stable extension
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(Error::Cyclic(labels[stuck].clone()));
        }

        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &succ[x] {
                set.union_with(&above[y]);
            }
            above[x] = set;
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (x, up) in above.iter().enumerate() {
            for y in up.ones() {
                below[y].insert(x);
            }
        }

        let mut covers = Vec::new();
        for (x, up) in above.iter().enumerate() {
            for y in up.ones() {
                if y == x {
                    continue;
                }
                // y covers x iff nothing sits strictly between them
                let mut between = above[x].clone();
                between.intersect_with(&below[y]);
                if between.count_ones(..) == 2 {
                    covers.push((x, y));
                }
            }
        }
        covers.sort_unstable();
        let distinct: std::collections::HashSet<(usize, usize)> =
            relations.iter().copied().collect();
        let redundant = distinct.len() - covers.len().min(distinct.len());
        if redundant > 0 {
            log::warn!("dropped {redundant} relation(s) implied by transitivity");
        }

        Ok(Self::assemble(labels, index, covers, above, below, order))
    }

    fn assemble(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        covers: Vec<(usize, usize)>,
        above: Vec<FixedBitSet>,
        below: Vec<FixedBitSet>,
        order: Vec<usize>,
    ) -> Self {
        let n = labels.len();
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        let mut cover_index = HashMap::with_capacity(covers.len());
        for (k, &(lo, up)) in covers.iter().enumerate() {
            up_covers[lo].push(up);
            down_covers[up].push(lo);
            cover_index.insert((lo, up), k);
        }
        Poset {
            labels,
            index,
            covers,
            cover_index,
            up_covers,
            down_covers,
            above,
            below,
            order,
            mobius_rows: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Builds a poset from string relations.
    pub fn from_labeled(labels: &[&str], relations: &[(&str, &str)]) -> Result<Self> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let idx: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let rel = relations
            .iter()
            .map(|(a, b)| {
                let a = *idx
                    .get(a)
                    .ok_or_else(|| Error::UnknownCell(a.to_string()))?;
                let b = *idx
                    .get(b)
                    .ok_or_else(|| Error::UnknownCell(b.to_string()))?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_relations(owned, &rel)
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(labels, &rel).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_relations(labels, &[]).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownCell(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_id(&self, lower: usize, upper: usize) -> Option<usize> {
        self.cover_index.get(&(lower, upper)).copied()
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.cover_index.contains_key(&(lower, upper))
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down_covers[x]
    }

    /// `{y : y >= x}`.
    pub fn above(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    /// `{y : y <= x}`.
    pub fn below(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    /// A linear extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> &[usize] {
        &self.order
    }

    /// Elements of the closed interval `[x, y]`, in linear-extension order.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let mut set = self.above[x].clone();
        set.intersect_with(&self.below[y]);
        self.order
            .iter()
            .copied()
            .filter(|&z| set.contains(z))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.up_covers[x].is_empty())
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down_covers[x].is_empty())
            .collect()
    }

    /// Same elements and labels, reversed order.
    pub fn opposite(&self) -> Poset {
        let mut covers: Vec<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        let order = self.order.iter().rev().copied().collect();
        Self::assemble(
            self.labels.clone(),
            self.index.clone(),
            covers,
            self.below.clone(),
            self.above.clone(),
            order,
        )
    }

    /// Adds a fresh greatest element covering every maximal element, even
    /// when a greatest element already exists.
    pub fn adjoin_top(&self) -> Poset {
        let top = self.len();
        let mut labels = self.labels.clone();
        labels.push(TOP_LABEL.to_string());
        let mut rel = self.covers.clone();
        rel.extend(self.maximal_elements().into_iter().map(|m| (m, top)));
        Self::from_relations(labels, &rel).expect("adjoining a top keeps the order acyclic")
    }

    /// Induced subposet on `keep`, with elements renumbered in increasing
    /// order. Returns the poset and the old index of each new element.
    pub fn restrict(&self, keep: &FixedBitSet) -> (Poset, Vec<usize>) {
        let old: Vec<usize> = keep.ones().filter(|&x| x < self.len()).collect();
        let mut new_of = vec![usize::MAX; self.len()];
        for (i, &x) in old.iter().enumerate() {
            new_of[x] = i;
        }
        let labels = old.iter().map(|&x| self.labels[x].clone()).collect();
        let mut rel = Vec::new();
        for &x in &old {
            for y in self.above[x].ones() {
                if y != x && keep.contains(y) {
                    rel.push((new_of[x], new_of[y]));
                }
            }
        }
        let p = Self::from_relations(labels, &rel).expect("subposet of a poset");
        (p, old)
    }

    /// Cartesian product with the componentwise order. Element `(a, b)` has
    /// index `a * other.len() + b`.
    pub fn product(&self, other: &Poset) -> Poset {
        let m = other.len();
        let mut labels = Vec::with_capacity(self.len() * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        let mut rel = Vec::new();
        for a in 0..self.len() {
            for b in 0..m {
                for &a2 in &self.up_covers[a] {
                    rel.push((a * m + b, a2 * m + b));
                }
                for &b2 in &other.up_covers[b] {
                    rel.push((a * m + b, a * m + b2));
                }
            }
        }
        Self::from_relations(labels, &rel).expect("product of posets")
    }

    /// Möbius function by the recursion `μ(x,x) = 1`,
    /// `μ(x,y) = -Σ_{x<=z<y} μ(x,z)`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        if !self.leq(x, y) {
            return Err(Error::Incomparable(
                self.labels[x].clone(),
                self.labels[y].clone(),
            ));
        }
        Ok(self.mobius_row(x)[y])
    }

    /// `μ(x, y)` for every `y`, zero where `y` is not above `x`. Memoized.
    pub fn mobius_row(&self, x: usize) -> &[i64] {
        self.mobius_rows[x].get_or_init(|| {
            let mut row = vec![0i64; self.len()];
            for &y in &self.order {
                if !self.leq(x, y) {
                    continue;
                }
                if y == x {
                    row[y] = 1;
                    continue;
                }
                let mut s = 0i64;
                for z in self.below[y].ones() {
                    if z != y && self.leq(x, z) {
                        s += row[z];
                    }
                }
                row[y] = -s;
            }
            row
        })
    }

    /// Minimal common upper bounds of `a` and `b`.
    pub fn minimal_upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        let mut ub = self.above[a].clone();
        ub.intersect_with(&self.above[b]);
        ub.ones()
            .filter(|&u| self.below[u].ones().all(|v| v == u || !ub.contains(v)))
            .collect()
    }

    /// Least upper bound when some upper bound exists.
    pub fn join(&self, a: usize, b: usize) -> Result<Option<usize>> {
        let mins = self.minimal_upper_bounds(a, b);
        match mins.len() {
            0 => Ok(None),
            1 => Ok(Some(mins[0])),
            _ => Err(Error::AmbiguousJoin {
                a: self.labels[a].clone(),
                b: self.labels[b].clone(),
                candidates: mins.iter().map(|&m| self.labels[m].clone()).collect(),
            }),
        }
    }

    /// The first pair (in index order) having common upper bounds but no
    /// least one, or `None` if every bounded pair has a join.
    pub fn meet_semilattice_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.minimal_upper_bounds(a, b).len() > 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_meet_semilattice(&self) -> bool {
        self.meet_semilattice_witness().is_none()
    }

    /// `Err((member, missing))` when `set` is not upward closed.
    pub fn check_filter(&self, set: &FixedBitSet) -> std::result::Result<(), (usize, usize)> {
        for x in set.ones() {
            if let Some(y) = self.above[x].ones().find(|&y| !set.contains(y)) {
                return Err((x, y));
            }
        }
        Ok(())
    }

    /// `Err((member, missing))` when `set` is not downward closed.
    pub fn check_ideal(&self, set: &FixedBitSet) -> std::result::Result<(), (usize, usize)> {
        for x in set.ones() {
            if let Some(y) = self.below[x].ones().find(|&y| !set.contains(y)) {
                return Err((x, y));
            }
        }
        Ok(())
    }

    pub fn up_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for x in set.ones() {
            out.union_with(&self.above[x]);
        }
        out
    }

    pub fn down_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for x in set.ones() {
            out.union_with(&self.below[x]);
        }
        out
    }

    /// Maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for m in self.minimal_elements() {
            stack.push(m);
            self.extend_chains(&mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let top = *stack.last().expect("non-empty chain");
        if self.up_covers[top].is_empty() {
            out.push(stack.clone());
            return;
        }
        for &u in &self.up_covers[top] {
            stack.push(u);
            self.extend_chains(stack, out);
            stack.pop();
        }
    }

    /// The simplicial complex of chains. Vertex `i` of the result stands for
    /// element `i` of this poset.
    pub fn order_complex(&self) -> Result<CellComplex> {
        if self.is_empty() {
            return Err(Error::EmptyInput("order complex of an empty poset"));
        }
        let facets: Vec<Vec<String>> = self
            .maximal_chains()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x.to_string()).collect())
            .collect();
        CellComplex::from_facets(&facets)
    }
}
