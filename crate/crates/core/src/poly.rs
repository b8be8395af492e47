//! Polymatroids as explicit rank tables.
//!
//! A [`RankTable`] stores one rank per subset of its ground set, indexed by
//! the subset's bitmask, together with the declared bound `k`. Every value of
//! the type satisfies the k-polymatroid axioms: normalization, monotonicity,
//! submodularity and singleton ranks at most `k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::subset::{all_subsets, Subset};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankTable {
    ground: GroundSet,
    k: i64,
    ranks: Vec<i64>,
}

/// Checks the axioms on a raw table and returns the first violation.
///
/// Monotonicity and submodularity are checked on covering pairs and
/// elementary squares `S, S+e, S+f, S+e+f`, which is equivalent to the global
/// conditions. Witnesses are reported as the two sets of the failing pair.
pub fn validate(ground: GroundSet, k: i64, ranks: Vec<i64>) -> Result<RankTable> {
    let n = ground.len();
    let expected = 1usize << n;
    if ranks.len() != expected {
        return Err(Error::WrongLength {
            expected,
            got: ranks.len(),
        });
    }
    if k < 0 {
        return Err(Error::NegativeK(k));
    }
    if ranks[0] != 0 {
        return Err(Error::NotNormalized { value: ranks[0] });
    }
    for s in all_subsets(n) {
        for e in (ground.full() - s).elements() {
            let t = s.with(e);
            if ranks[s.index()] > ranks[t.index()] {
                return Err(Error::NotMonotone {
                    a: ground.describe(s),
                    b: ground.describe(t),
                    rank_a: ranks[s.index()],
                    rank_b: ranks[t.index()],
                });
            }
        }
    }
    for s in all_subsets(n) {
        let outside: Vec<usize> = (ground.full() - s).elements().collect();
        for (x, &e) in outside.iter().enumerate() {
            for &f in &outside[x + 1..] {
                let se = s.with(e);
                let sf = s.with(f);
                let sef = se.with(f);
                if ranks[se.index()] + ranks[sf.index()] < ranks[sef.index()] + ranks[s.index()] {
                    return Err(Error::NotSubmodular {
                        a: ground.describe(se),
                        b: ground.describe(sf),
                    });
                }
            }
        }
    }
    for e in 0..n {
        let r = ranks[1 << e];
        if r > k {
            return Err(Error::ExceedsK {
                element: ground.label(e).to_string(),
                rank: r,
                k,
            });
        }
    }
    Ok(RankTable { ground, k, ranks })
}

impl RankTable {
    /// Validating constructor; see [`validate`].
    pub fn new(ground: GroundSet, k: i64, ranks: Vec<i64>) -> Result<Self> {
        validate(ground, k, ranks)
    }

    /// Builds and validates the table `A -> f(A)`.
    pub fn from_fn(ground: GroundSet, k: i64, f: impl FnMut(Subset) -> i64) -> Result<Self> {
        let ranks = all_subsets(ground.len()).map(f).collect();
        validate(ground, k, ranks)
    }

    /// For results of operations that preserve the axioms. Debug builds still
    /// re-check them.
    pub(crate) fn from_trusted(ground: GroundSet, k: i64, ranks: Vec<i64>) -> Self {
        debug_assert_eq!(
            validate(ground.clone(), k, ranks.clone()).err(),
            None,
            "axioms must be preserved"
        );
        RankTable { ground, k, ranks }
    }

    /// The empty polymatroid with bound `k`.
    pub fn empty(k: i64) -> Self {
        RankTable {
            ground: GroundSet::empty(),
            k,
            ranks: vec![0],
        }
    }

    /// The uniform matroid `U_{a,b}` on standard labels, as a 1-polymatroid.
    pub fn uniform(a: i64, b: i64) -> Result<Self> {
        if b < 1 || a < 0 || a > b {
            return Err(Error::InvalidParams(format!(
                "uniform matroid needs 0 <= a <= b and b >= 1, got a = {a}, b = {b}"
            )));
        }
        let ground = GroundSet::new(GroundSet::standard(b as usize).labels().to_vec())?;
        Self::from_fn(ground, 1, |s| (s.len() as i64).min(a))
    }

    /// The one-element k-polymatroid of rank `m` on `{e}`.
    pub fn singleton(k: i64, m: i64) -> Result<Self> {
        Self::new(GroundSet::standard(1), k, vec![0, m])
    }

    /// The k-polymatroid on `{e, f}` with the given singleton and total ranks.
    pub fn doubleton(k: i64, rho_e: i64, rho_f: i64, m: i64) -> Result<Self> {
        Self::new(GroundSet::standard(2), k, vec![0, rho_e, rho_f, m])
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Number of ground elements.
    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Ranks indexed by subset mask.
    pub fn ranks(&self) -> &[i64] {
        &self.ranks
    }

    pub fn into_ranks(self) -> Vec<i64> {
        self.ranks
    }

    #[inline]
    pub fn rank(&self, s: Subset) -> i64 {
        self.ranks[s.index()]
    }

    #[inline]
    pub fn element_rank(&self, e: usize) -> i64 {
        self.ranks[1 << e]
    }

    pub fn total_rank(&self) -> i64 {
        self.ranks[self.ranks.len() - 1]
    }

    pub fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<i64> {
        Ok(self.rank(self.ground.subset_of(labels)?))
    }

    /// Same ranks under a different bound `k`.
    pub fn with_k(&self, k: i64) -> Result<Self> {
        validate(self.ground.clone(), k, self.ranks.clone())
    }

    /// Same ranks under new labels.
    pub fn relabel(&self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.len() {
            return Err(Error::GroundMismatch);
        }
        Ok(RankTable {
            ground,
            k: self.k,
            ranks: self.ranks.clone(),
        })
    }

    fn check_in_ground(&self, x: Subset) -> Result<()> {
        let extra = x - self.ground.full();
        match extra.elements().next() {
            Some(i) => Err(Error::UnknownElement(format!("#{i}"))),
            None => Ok(()),
        }
    }

    /// `ρ\X`: the restriction to `E - X`.
    pub fn delete(&self, x: Subset) -> Result<Self> {
        self.check_in_ground(x)?;
        let kept = self.ground.full() - x;
        let ranks = all_subsets(kept.len())
            .map(|s| self.rank(s.expand_from(kept)))
            .collect();
        Ok(Self::from_trusted(self.ground.restrict(kept), self.k, ranks))
    }

    /// `ρ/X`: `Y -> ρ(X ∪ Y) - ρ(X)` on `E - X`.
    pub fn contract(&self, x: Subset) -> Result<Self> {
        self.check_in_ground(x)?;
        let kept = self.ground.full() - x;
        let base = self.rank(x);
        let ranks = all_subsets(kept.len())
            .map(|s| self.rank(s.expand_from(kept) | x) - base)
            .collect();
        Ok(Self::from_trusted(self.ground.restrict(kept), self.k, ranks))
    }

    /// `ρ|A`, the same as deleting `E - A`.
    pub fn restrict(&self, a: Subset) -> Result<Self> {
        self.check_in_ground(a)?;
        self.delete(self.ground.full() - a)
    }

    pub fn delete_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        self.delete(self.ground.subset_of(labels)?)
    }

    pub fn contract_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        self.contract(self.ground.subset_of(labels)?)
    }

    /// `ρ/C\D` for disjoint `C` and `D`.
    pub fn minor(&self, contract: Subset, delete: Subset) -> Result<Self> {
        if !contract.is_disjoint(delete) {
            return Err(Error::OverlappingSets);
        }
        self.check_in_ground(contract | delete)?;
        // Deleting first keeps the contract set's indices meaningful after
        // re-indexing through the kept set.
        let kept = self.ground.full() - delete;
        self.delete(delete)?.contract(contract.compress_to(kept))
    }

    /// `ρ1 ⊕ ρ2` on the concatenated ground set.
    pub fn direct_sum(&self, other: &RankTable) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::MixedK(self.k, other.k));
        }
        if let Some(l) = other
            .ground
            .labels()
            .iter()
            .find(|l| self.ground.position(l).is_some())
        {
            return Err(Error::LabelCollision(l.clone()));
        }
        let ground = GroundSet::new(
            self.ground
                .labels()
                .iter()
                .chain(other.ground.labels())
                .cloned(),
        )?;
        let n1 = self.len();
        let low = Subset::full(n1);
        let ranks = all_subsets(ground.len())
            .map(|s| self.rank(s & low) + other.rank(Subset(s.bits() >> n1)))
            .collect();
        Ok(Self::from_trusted(ground, self.k, ranks))
    }

    /// Pointwise sum; the bound of the result is the sum of the bounds.
    pub fn add(&self, other: &RankTable) -> Result<Self> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        let k = self.k.checked_add(other.k).ok_or(Error::Overflow("add"))?;
        let ranks = self
            .ranks
            .iter()
            .zip(&other.ranks)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("add")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(self.ground.clone(), k, ranks))
    }

    /// `c·ρ` with bound `c·k`.
    pub fn scalar_multiply(&self, c: i64) -> Result<Self> {
        if c < 0 {
            return Err(Error::InvalidParams(format!(
                "scalar must be nonnegative, got {c}"
            )));
        }
        let k = self.k.checked_mul(c).ok_or(Error::Overflow("scalar_multiply"))?;
        let ranks = self
            .ranks
            .iter()
            .map(|r| r.checked_mul(c).ok_or(Error::Overflow("scalar_multiply")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(self.ground.clone(), k, ranks))
    }

    /// The k-dual `X -> k|X| + ρ(E - X) - ρ(E)`.
    pub fn k_dual(&self) -> Result<Self> {
        let full = self.ground.full();
        let total = self.total_rank();
        let ranks = all_subsets(self.len())
            .map(|x| {
                (x.len() as i64)
                    .checked_mul(self.k)
                    .and_then(|v| v.checked_add(self.rank(full - x)))
                    .and_then(|v| v.checked_sub(total))
                    .ok_or(Error::Overflow("k_dual"))
            })
            .collect::<Result<Vec<_>>>()?;
        validate(self.ground.clone(), self.k, ranks)
    }

    /// `|E| - ρ(E)`; negative for polymatroids of large rank.
    pub fn nullity(&self) -> i64 {
        self.len() as i64 - self.total_rank()
    }

    /// Elements of rank zero.
    pub fn loops(&self) -> Subset {
        (0..self.len())
            .filter(|&e| self.element_rank(e) == 0)
            .fold(Subset::EMPTY, Subset::with)
    }

    /// Deletes loops and all but the first (in ground order) point of each
    /// parallel class. Points `e, f` are parallel when `ρ({e,f}) = 1`.
    pub fn simplify(&self) -> Self {
        let mut kept: Vec<usize> = Vec::new();
        for e in 0..self.len() {
            match self.element_rank(e) {
                0 => {}
                1 => {
                    let parallel = kept.iter().any(|&f| {
                        self.element_rank(f) == 1
                            && self.rank(Subset::singleton(e).with(f)) == 1
                    });
                    if !parallel {
                        kept.push(e);
                    }
                }
                _ => kept.push(e),
            }
        }
        let keep = kept.into_iter().fold(Subset::EMPTY, Subset::with);
        self.restrict(keep).expect("subset of ground")
    }

    /// True if no loops and no two parallel points remain.
    pub fn is_simple(&self) -> bool {
        self.simplify().len() == self.len()
    }

    /// The table with element `perm[i]` of `self` placed at position `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len());
        let ranks = all_subsets(self.len())
            .map(|s| self.rank(map_subset(s, perm)))
            .collect();
        RankTable {
            ground: self.ground.permuted(perm),
            k: self.k,
            ranks,
        }
    }

    /// Lexicographically least rank vector over all relabelings.
    pub fn canonical_form(&self) -> Vec<i64> {
        self.canonical_with_perm().0
    }

    /// Canonical rank vector together with a permutation achieving it.
    pub fn canonical_with_perm(&self) -> (Vec<i64>, Vec<usize>) {
        let n = self.len();
        let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
        for perm in permutations(n) {
            let v: Vec<i64> = all_subsets(n)
                .map(|s| self.rank(map_subset(s, &perm)))
                .collect();
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, perm));
            }
        }
        best.expect("at least the identity permutation")
    }

    /// True if the rank vector is already its canonical form.
    pub fn is_canonical(&self) -> bool {
        let n = self.len();
        permutations(n).into_iter().all(|perm| {
            let v = all_subsets(n).map(|s| self.rank(map_subset(s, &perm)));
            v.cmp(self.ranks.iter().copied()) != std::cmp::Ordering::Less
        })
    }

    /// A bijection `σ` with `other(σ(A)) = self(A)` for all `A`, if one
    /// exists. `σ[i]` is the position in `other` of element `i` of `self`.
    /// The bounds `k` must agree as well.
    pub fn is_isomorphic(&self, other: &RankTable) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.k != other.k {
            return None;
        }
        let n = self.len();
        permutations(n).into_iter().find(|sigma| {
            all_subsets(n).all(|s| other.rank(map_subset(s, sigma)) == self.rank(s))
        })
    }
}

/// Image of `s` under `i -> perm[i]`.
#[inline]
pub(crate) fn map_subset(s: Subset, perm: &[usize]) -> Subset {
    s.elements().fold(Subset::EMPTY, |acc, i| acc.with(perm[i]))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

impl fmt::Debug for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankTable(k={}; ", self.k)?;
        for s in all_subsets(self.len()) {
            if s.index() > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", self.ground.describe(s), self.rank(s))?;
        }
        write!(f, ")")
    }
}

/// A direct sum of loops and coloops, stored as its coloop set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaxSepMatroid {
    ground: GroundSet,
    coloops: Subset,
}

impl MaxSepMatroid {
    pub fn new(ground: GroundSet, coloops: Subset) -> Result<Self> {
        if !coloops.is_subset_of(ground.full()) {
            return Err(Error::UnknownElement(format!("{coloops:?}")));
        }
        Ok(MaxSepMatroid { ground, coloops })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn coloops(&self) -> Subset {
        self.coloops
    }

    pub fn rank(&self, a: Subset) -> i64 {
        (a & self.coloops).len() as i64
    }

    /// The matroid as a 1-polymatroid table.
    pub fn to_table(&self) -> RankTable {
        let ranks = all_subsets(self.ground.len()).map(|s| self.rank(s)).collect();
        RankTable::from_trusted(self.ground.clone(), 1, ranks)
    }
}
