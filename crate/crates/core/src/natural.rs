//! The k-natural matroid, kept implicit.
//!
//! Replacing each element `e` by `k` freely placed clones gives a matroid on
//! `k·|E|` elements whose rank only depends on how many clones of each
//! element a set contains. That count-level rank function is
//!
//! ```text
//! R(a) = min over B ⊆ E of  ρ(B) + Σ_{e ∉ B} a_e
//! ```
//!
//! on the grid `[0,k]^E`. [`MultisetRankGrid`] memoizes it. The explicit
//! matroid is only materialized by [`ExplicitNatural`] for tiny instances.

use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::poly::RankTable;
use crate::polytope;
use crate::subset::{all_subsets, Subset};

/// Per-element clone counts, positional in ground order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountVector(pub Vec<i64>);

impl CountVector {
    pub fn zeros(n: usize) -> Self {
        CountVector(vec![0; n])
    }

    /// `level` on every element of `s`, zero elsewhere.
    pub fn indicator(n: usize, s: Subset, level: i64) -> Self {
        CountVector((0..n).map(|e| if s.contains(e) { level } else { 0 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &CountVector) -> CountVector {
        CountVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn dominated_by(&self, other: &CountVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<i64>> for CountVector {
    fn from(v: Vec<i64>) -> Self {
        CountVector(v)
    }
}

/// The clone `e_i` of ground element `e`, `1 <= i <= k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CloneElement {
    pub base: String,
    pub index: i64,
}

impl CloneElement {
    pub fn new(base: impl Into<String>, index: i64) -> Self {
        CloneElement {
            base: base.into(),
            index,
        }
    }

    /// Parses `e2` style names: a ground label followed by a decimal index.
    pub fn parse(s: &str, ground: &GroundSet) -> Result<Self> {
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::Format(format!("clone {s:?} has no index")))?;
        let (base, idx) = s.split_at(split);
        ground.index_of(base)?;
        let index = idx
            .parse()
            .map_err(|_| Error::Format(format!("clone {s:?} has a bad index")))?;
        Ok(CloneElement::new(base, index))
    }
}

/// `X -> (|X ∩ X_e|)_e`. Repeated clones are counted once.
pub fn partition_map(ground: &GroundSet, clones: &[CloneElement], k: i64) -> Result<CountVector> {
    let mut seen = std::collections::HashSet::new();
    let mut counts = vec![0; ground.len()];
    for c in clones {
        if c.index < 1 || c.index > k {
            return Err(Error::InvalidParams(format!(
                "clone index {} of {} outside [1,{k}]",
                c.index, c.base
            )));
        }
        let e = ground.index_of(&c.base)?;
        if seen.insert((e, c.index)) {
            counts[e] += 1;
        }
    }
    Ok(CountVector(counts))
}

fn check_point(table: &RankTable, a: &[i64]) -> Result<()> {
    if a.len() != table.len() {
        return Err(Error::DimensionMismatch {
            expected: table.len(),
            got: a.len(),
        });
    }
    if a.iter().any(|&x| x < 0 || x > table.k()) {
        return Err(Error::OutOfGrid { k: table.k() });
    }
    Ok(())
}

/// The min-over-subsets formula, without bounds checks.
#[inline]
pub(crate) fn min_formula(table: &RankTable, a: &[i64]) -> i64 {
    let n = a.len();
    let total: i64 = a.iter().sum();
    // inside[B] = Σ_{e ∈ B} a_e, built by peeling the lowest bit
    let mut inside = [0i64; 1 << 8];
    let mut best = total;
    if n <= 8 {
        for b in 1..1usize << n {
            let low = b.trailing_zeros() as usize;
            inside[b] = inside[b & (b - 1)] + a[low];
            best = best.min(table.ranks()[b] + total - inside[b]);
        }
    } else {
        for s in all_subsets(n).skip(1) {
            let ins: i64 = s.elements().map(|e| a[e]).sum();
            best = best.min(table.rank(s) + total - ins);
        }
    }
    best
}

/// `R_ρ(a)`: the natural-matroid rank of any clone set with counts `a`.
pub fn multiset_rank(table: &RankTable, a: &CountVector) -> Result<i64> {
    check_point(table, &a.0)?;
    Ok(min_formula(table, &a.0))
}

/// `R_ρ(a)` as the largest coordinate sum of an integer point of the
/// independence polytope inside the box `[0,a]`. Brute force; used to cross
/// check [`multiset_rank`].
pub fn multiset_rank_oracle(table: &RankTable, a: &CountVector) -> Result<i64> {
    check_point(table, &a.0)?;
    let mut best = 0;
    let mut b = vec![0i64; a.len()];
    loop {
        if polytope::is_independent_integer(table, &b) {
            best = best.max(b.iter().sum());
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == b.len() {
                return Ok(best);
            }
            if b[i] < a.0[i] {
                b[i] += 1;
                break;
            }
            b[i] = 0;
            i += 1;
        }
    }
}

/// Rank of a set of clones in the k-natural matroid.
pub fn natural_rank(table: &RankTable, clones: &[CloneElement]) -> Result<i64> {
    let a = partition_map(table.ground(), clones, table.k())?;
    multiset_rank(table, &a)
}

/// Memoized `R_ρ` on `[0,k]^E`.
///
/// Entries are computed on first access and published through a
/// [`OnceLock`], so a grid may be shared by concurrent readers.
pub struct MultisetRankGrid {
    table: RankTable,
    side: usize,
    values: Vec<OnceLock<i64>>,
}

impl MultisetRankGrid {
    pub fn new(table: &RankTable) -> Self {
        let side = table.k() as usize + 1;
        let size = side.pow(table.len() as u32);
        MultisetRankGrid {
            table: table.clone(),
            side,
            values: (0..size).map(|_| OnceLock::new()).collect(),
        }
    }

    /// A grid with every entry already computed.
    pub fn eager(table: &RankTable) -> Self {
        let g = Self::new(table);
        g.fill();
        g
    }

    pub fn fill(&self) {
        let mut p = vec![0i64; self.table.len()];
        for idx in 0..self.values.len() {
            self.decode_into(idx, &mut p);
            self.values[idx].get_or_init(|| min_formula(&self.table, &p));
        }
    }

    pub fn table(&self) -> &RankTable {
        &self.table
    }

    pub fn k(&self) -> i64 {
        self.table.k()
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    /// Number of grid points, `(k+1)^|E|`.
    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// Row-major index with the first element most significant.
    #[inline]
    pub fn index(&self, a: &[i64]) -> usize {
        a.iter().fold(0, |acc, &x| acc * self.side + x as usize)
    }

    fn decode_into(&self, mut idx: usize, out: &mut [i64]) {
        for slot in out.iter_mut().rev() {
            *slot = (idx % self.side) as i64;
            idx /= self.side;
        }
    }

    pub fn point(&self, idx: usize) -> CountVector {
        let mut p = vec![0; self.dim()];
        self.decode_into(idx, &mut p);
        CountVector(p)
    }

    /// `R(a)` without bounds checks beyond debug assertions.
    #[inline]
    pub fn value(&self, a: &[i64]) -> i64 {
        debug_assert!(check_point(&self.table, a).is_ok());
        *self.values[self.index(a)].get_or_init(|| min_formula(&self.table, a))
    }

    pub fn get(&self, a: &CountVector) -> Result<i64> {
        check_point(&self.table, &a.0)?;
        Ok(self.value(&a.0))
    }

    /// `R(k·1_A)`, which equals `ρ(A)`.
    pub fn corner_value(&self, s: Subset) -> i64 {
        let a = CountVector::indicator(self.dim(), s, self.k());
        self.value(&a.0)
    }

    /// All `(point, value)` pairs in lexicographic order of the points.
    pub fn entries(&self) -> impl Iterator<Item = (CountVector, i64)> + '_ {
        (0..self.size()).map(|i| {
            let p = self.point(i);
            let v = self.value(&p.0);
            (p, v)
        })
    }

    /// One row per grid point: the counts followed by the rank.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for l in self.table.ground().labels() {
            let _ = write!(out, "{l},");
        }
        out.push_str("rank\n");
        for (p, v) in self.entries() {
            for x in &p.0 {
                let _ = write!(out, "{x},");
            }
            let _ = writeln!(out, "{v}");
        }
        out
    }
}

/// `R(c + y) - R(c)`: ranks in the natural matroid after contracting `c`
/// clones per element.
pub fn minor_multiset_rank(grid: &MultisetRankGrid, c: &CountVector, y: &CountVector) -> Result<i64> {
    if c.len() != grid.dim() || y.len() != grid.dim() {
        return Err(Error::DimensionMismatch {
            expected: grid.dim(),
            got: c.len().max(y.len()),
        });
    }
    let s = c.plus(y);
    if c.0.iter().chain(&y.0).any(|&x| x < 0) || s.0.iter().any(|&x| x > grid.k()) {
        return Err(Error::OutOfGrid { k: grid.k() });
    }
    Ok(grid.value(&s.0) - grid.value(&c.0))
}

/// Largest clone count `k·|E|` that [`ExplicitNatural`] materializes.
pub const EXPLICIT_LIMIT: usize = 16;

/// The k-natural matroid as a full rank table on `k·|E|` elements.
///
/// Clone `e_i` is bit `e·k + (i - 1)`. Ranks come straight from the defining
/// formula `r(X) = min_A ρ(A) + |X - X_A|`.
pub struct ExplicitNatural {
    k: usize,
    n: usize,
    ranks: Vec<i64>,
}

impl ExplicitNatural {
    pub fn new(table: &RankTable) -> Result<Self> {
        let k = table.k() as usize;
        let n = table.len();
        let elements = k * n;
        if elements > EXPLICIT_LIMIT {
            return Err(Error::TooLarge {
                elements,
                limit: EXPLICIT_LIMIT,
            });
        }
        let block = |e: usize| (((1u64 << k) - 1) << (e * k)) as u32;
        let x_a: Vec<u32> = all_subsets(n)
            .map(|s| s.elements().fold(0u32, |m, e| m | block(e)))
            .collect();
        let ranks = (0..1u32 << elements)
            .map(|x| {
                all_subsets(n)
                    .map(|s| table.rank(s) + (x & !x_a[s.index()]).count_ones() as i64)
                    .min()
                    .unwrap()
            })
            .collect();
        Ok(ExplicitNatural { k, n, ranks })
    }

    pub fn element_count(&self) -> usize {
        self.k * self.n
    }

    pub fn rank(&self, x: u32) -> i64 {
        self.ranks[x as usize]
    }

    /// The clone set `X_A`.
    pub fn clones_of(&self, s: Subset) -> u32 {
        s.elements()
            .fold(0u32, |m, e| m | ((((1u64 << self.k) - 1) as u32) << (e * self.k)))
    }

    /// Per-element counts of an explicit clone set.
    pub fn counts(&self, x: u32) -> CountVector {
        let mask = ((1u64 << self.k) - 1) as u32;
        CountVector(
            (0..self.n)
                .map(|e| ((x >> (e * self.k)) & mask).count_ones() as i64)
                .collect(),
        )
    }
}

/// Checks on the materialized natural matroid that each `X_e` is a set of
/// clones: rank depends only on the partition image, and `r(X_A) = ρ(A)`.
pub fn clone_check(table: &RankTable) -> Result<bool> {
    let nat = ExplicitNatural::new(table)?;
    let grid_side = table.k() as usize + 1;
    let mut by_counts: Vec<Option<i64>> = vec![None; grid_side.pow(table.len() as u32)];
    for x in 0..1u32 << nat.element_count() {
        let c = nat.counts(x);
        let idx = c.0.iter().fold(0, |acc, &v| acc * grid_side + v as usize);
        match by_counts[idx] {
            None => by_counts[idx] = Some(nat.rank(x)),
            Some(r) if r != nat.rank(x) => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(all_subsets(table.len()).all(|s| nat.rank(nat.clones_of(s)) == table.rank(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> RankTable {
        RankTable::doubleton(3, 3, 2, 4).unwrap()
    }

    fn clones(names: &[&str]) -> Vec<CloneElement> {
        let g = GroundSet::standard(2);
        names.iter().map(|s| CloneElement::parse(s, &g).unwrap()).collect()
    }

    #[test]
    fn partition_map_examples() {
        let g = GroundSet::standard(2);
        assert_eq!(
            partition_map(&g, &clones(&["e2", "f1", "f2", "f3"]), 3).unwrap(),
            CountVector(vec![1, 3])
        );
        assert_eq!(partition_map(&g, &[], 3).unwrap(), CountVector(vec![0, 0]));
        assert_eq!(
            partition_map(&g, &clones(&["e1", "e3", "f2"]), 3).unwrap(),
            CountVector(vec![2, 1])
        );
        assert!(partition_map(&g, &clones(&["e4"]), 3).is_err());
    }

    #[test]
    fn multiset_rank_examples() {
        let r = example();
        assert_eq!(multiset_rank(&r, &vec![1, 3].into()).unwrap(), 3);
        assert_eq!(multiset_rank(&r, &vec![0, 0].into()).unwrap(), 0);
        assert_eq!(multiset_rank(&r, &vec![3, 1].into()).unwrap(), 4);
        assert_eq!(multiset_rank_oracle(&r, &vec![2, 1].into()).unwrap(), 3);
        for q in 0..=3 {
            assert_eq!(
                multiset_rank_oracle(&r, &vec![0, q].into()).unwrap(),
                q.min(2)
            );
        }
        assert!(matches!(
            multiset_rank(&r, &vec![4, 0].into()).unwrap_err(),
            Error::OutOfGrid { .. }
        ));
        assert!(matches!(
            multiset_rank(&r, &vec![1].into()).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn natural_rank_examples() {
        let r = example();
        for s in all_subsets(2) {
            let xs: Vec<CloneElement> = s
                .elements()
                .flat_map(|e| (1..=3).map(move |i| CloneElement::new(["e", "f"][e], i)))
                .collect();
            assert_eq!(natural_rank(&r, &xs).unwrap(), r.rank(s));
        }
        assert_eq!(natural_rank(&r, &[]).unwrap(), 0);
        let single = RankTable::singleton(4, 2).unwrap();
        let xs: Vec<_> = (1..=4).map(|i| CloneElement::new("e", i)).collect();
        assert_eq!(natural_rank(&single, &xs).unwrap(), 2);
    }

    #[test]
    fn lazy_and_eager_grids_agree() {
        let r = example();
        let lazy = MultisetRankGrid::new(&r);
        let eager = MultisetRankGrid::eager(&r);
        for i in (0..lazy.size()).rev() {
            let p = lazy.point(i);
            assert_eq!(lazy.value(&p.0), eager.value(&p.0));
        }
    }

    #[test]
    fn minor_ranks_on_slices() {
        let g = MultisetRankGrid::new(&example());
        let y = |q| CountVector(vec![0, q]);
        assert_eq!(
            minor_multiset_rank(&g, &CountVector::zeros(2), &y(2)).unwrap(),
            2
        );
        let c = CountVector(vec![2, 0]);
        let got: Vec<i64> = (1..=3)
            .map(|q| minor_multiset_rank(&g, &c, &y(q)).unwrap())
            .collect();
        assert_eq!(got, vec![1, 2, 2]);
        assert_eq!(
            minor_multiset_rank(&g, &CountVector(vec![3, 0]), &y(3)).unwrap(),
            1
        );
        assert!(matches!(
            minor_multiset_rank(&g, &CountVector(vec![3, 0]), &CountVector(vec![1, 0]))
                .unwrap_err(),
            Error::OutOfGrid { .. }
        ));
    }

    #[test]
    fn csv_rows_are_lexicographic() {
        let g = MultisetRankGrid::new(&RankTable::singleton(2, 1).unwrap());
        assert_eq!(g.to_csv(), "e,rank\n0,0\n1,1\n2,1\n");
    }

    #[test]
    fn clone_checks() {
        assert!(clone_check(&example()).unwrap());
        assert!(clone_check(&RankTable::singleton(1, 1).unwrap()).unwrap());
        let big = RankTable::doubleton(9, 1, 1, 2).unwrap();
        assert!(matches!(
            clone_check(&big).unwrap_err(),
            Error::TooLarge { .. }
        ));
    }
}
