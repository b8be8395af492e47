//! Exhaustive excluded-minor search over small ground sets.
//!
//! Rank tables are generated in subset-mask order with monotonicity and
//! submodularity turned into bounds on each new entry, so only valid
//! k-polymatroids are ever completed. Only canonical representatives are
//! kept. Class membership is computed once per canonical table, size by size:
//! every single-element minor of an `n`-element table is an `(n−1)`-element
//! table, whose membership is already known.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::compression::is_in_gamma;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::poly::RankTable;
use crate::subset::Subset;
use crate::uniform::{in_class, ClassSpec, ExcludedMinorRecord, RecordTag};

/// Largest ground set searched without [`SearchOptions::allow_large`].
pub const DEFAULT_MAX_ELEMENTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_elements: usize,
    pub node_budget: u64,
    pub allow_large: bool,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_elements: DEFAULT_MAX_ELEMENTS,
            node_budget: 10_000_000,
            allow_large: false,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Sorted by `(|E|, canonical rank vector)`.
    pub records: Vec<ExcludedMinorRecord>,
    /// Rank-table entries assigned during generation.
    pub nodes: u64,
    /// Canonical tables per ground-set size, starting at size 1.
    pub canonical_tables: Vec<usize>,
}

struct Generator {
    n: usize,
    k: i64,
    ranks: Vec<i64>,
    nodes: u64,
    budget: u64,
}

impl Generator {
    fn bounds(&self, mask: usize) -> (i64, i64) {
        let s = Subset(mask as u32);
        if s.len() == 1 {
            return (0, self.k);
        }
        let mut lo = 0;
        let mut hi = i64::MAX;
        for e in s.elements() {
            let without_e = mask & !(1 << e);
            lo = lo.max(self.ranks[without_e]);
            for f in s.elements().filter(|&f| f > e) {
                let without_f = mask & !(1 << f);
                let without_ef = without_e & !(1 << f);
                hi = hi.min(self.ranks[without_e] + self.ranks[without_f] - self.ranks[without_ef]);
            }
        }
        (lo, hi)
    }

    fn run(&mut self, mask: usize, emit: &mut dyn FnMut(&[i64])) -> Result<()> {
        if mask == self.ranks.len() {
            emit(&self.ranks);
            return Ok(());
        }
        let (lo, hi) = self.bounds(mask);
        for v in lo..=hi {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.budget,
                });
            }
            self.ranks[mask] = v;
            self.run(mask + 1, emit)?;
        }
        Ok(())
    }
}

/// Every valid k-polymatroid on `n` elements, as rank vectors in
/// lexicographic order. `nodes` accumulates the entries assigned.
pub fn generate_tables(
    n: usize,
    k: i64,
    budget: u64,
    nodes: &mut u64,
    mut emit: impl FnMut(&[i64]),
) -> Result<()> {
    let mut g = Generator {
        n,
        k,
        ranks: vec![0; 1 << n],
        nodes: *nodes,
        budget,
    };
    debug_assert!(g.n <= crate::ground::MAX_GROUND);
    let r = g.run(1, &mut emit);
    *nodes = g.nodes;
    r
}

/// A random k-polymatroid on `n` standard labels: each entry is drawn
/// uniformly from the bounds left by the entries before it, restarting on a
/// dead end.
pub fn random_table<R: rand::Rng + ?Sized>(n: usize, k: i64, rng: &mut R) -> RankTable {
    let mut g = Generator {
        n,
        k,
        ranks: vec![0; 1 << n],
        nodes: 0,
        budget: u64::MAX,
    };
    'retry: loop {
        for mask in 1..1usize << n {
            let (lo, hi) = g.bounds(mask);
            if lo > hi {
                continue 'retry;
            }
            g.ranks[mask] = rng.gen_range(lo..=hi);
        }
        return RankTable::from_trusted(GroundSet::standard(g.n), k, g.ranks);
    }
}

/// Every k-polymatroid on `n` standard labels.
pub fn all_tables(n: usize, k: i64) -> Vec<RankTable> {
    let ground = GroundSet::standard(n);
    let mut out = Vec::new();
    let mut nodes = 0;
    generate_tables(n, k, u64::MAX, &mut nodes, |r| {
        out.push(RankTable::from_trusted(ground.clone(), k, r.to_vec()))
    })
    .expect("unbounded budget");
    out
}

/// Canonical k-polymatroids on `n` elements with standard labels.
pub fn canonical_tables(n: usize, k: i64, budget: u64, nodes: &mut u64) -> Result<Vec<RankTable>> {
    let ground = GroundSet::standard(n);
    let mut out = Vec::new();
    generate_tables(n, k, budget, nodes, |r| {
        let t = RankTable::from_trusted(ground.clone(), k, r.to_vec());
        if t.is_canonical() {
            out.push(t);
        }
    })?;
    Ok(out)
}

fn map_maybe_par<T, R>(items: &[T], parallel: bool, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// All excluded minors of the class on at most `max_elements` elements, up
/// to isomorphism.
pub fn search_excluded(class: &ClassSpec, opts: &SearchOptions) -> Result<SearchOutcome> {
    if opts.max_elements > DEFAULT_MAX_ELEMENTS && !opts.allow_large {
        return Err(Error::InvalidParams(format!(
            "searching {} elements needs an explicit override (default bound {DEFAULT_MAX_ELEMENTS})",
            opts.max_elements
        )));
    }
    if opts.max_elements > crate::ground::MAX_GROUND {
        return Err(Error::TooManyElements {
            got: opts.max_elements,
            limit: crate::ground::MAX_GROUND,
        });
    }
    let k = class.k;
    let mut nodes = 0;
    let mut member: HashMap<Vec<i64>, bool> = HashMap::new();
    member.insert(vec![0], true);
    let mut records = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=opts.max_elements {
        let tables = canonical_tables(n, k, opts.node_budget, &mut nodes)?;
        counts.push(tables.len());
        let inside = map_maybe_par(&tables, opts.parallel, |t| in_class(t, class));
        let inside = inside.into_iter().collect::<Result<Vec<bool>>>()?;
        for (t, &is_in) in tables.iter().zip(&inside) {
            if is_in {
                continue;
            }
            let mut proper_inside = true;
            'minors: for e in 0..n {
                let x = Subset::singleton(e);
                for m in [t.delete(x)?, t.contract(x)?] {
                    if !member[&m.canonical_form()] {
                        proper_inside = false;
                        break 'minors;
                    }
                }
            }
            if proper_inside {
                records.push(t.clone());
            }
        }
        for (t, is_in) in tables.into_iter().zip(inside) {
            member.insert(t.into_ranks(), is_in);
        }
    }
    let mut records = map_maybe_par(&records, opts.parallel, |t| {
        let mut r = ExcludedMinorRecord::new_unchecked(t.clone(), class);
        if is_in_gamma(t, class)? {
            r.tags.push(RecordTag::Gamma);
        }
        Ok(r)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    records.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(SearchOutcome {
        records,
        nodes,
        canonical_tables: counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::validate;

    #[test]
    fn generation_matches_filtering_all_vectors() {
        // brute force: every vector in [0, 2k]^(2^n - 1) that validates
        let (n, k) = (2, 2);
        let mut expected = Vec::new();
        for x in 0..=k {
            for y in 0..=k {
                for z in 0..=2 * k {
                    if validate(GroundSet::standard(n), k, vec![0, x, y, z]).is_ok() {
                        expected.push(vec![0, x, y, z]);
                    }
                }
            }
        }
        let mut got = Vec::new();
        let mut nodes = 0;
        generate_tables(n, k, u64::MAX, &mut nodes, |r| got.push(r.to_vec())).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn generated_tables_validate() {
        let mut nodes = 0;
        let mut count = 0;
        generate_tables(3, 2, u64::MAX, &mut nodes, |r| {
            validate(GroundSet::standard(3), 2, r.to_vec()).unwrap();
            count += 1;
        })
        .unwrap();
        assert!(count > 0);
        assert!(nodes >= count);
    }

    #[test]
    fn random_tables_validate() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..=4 {
            for k in 0..=5 {
                let t = random_table(n, k, &mut rng);
                validate(t.ground().clone(), k, t.ranks().to_vec()).unwrap();
            }
        }
        assert_eq!(all_tables(2, 2).len(), 14);
    }

    #[test]
    fn budget_is_enforced() {
        let class = ClassSpec::new(2, 4, 4).unwrap();
        let opts = SearchOptions {
            node_budget: 10,
            ..SearchOptions::default()
        };
        assert_eq!(
            search_excluded(&class, &opts).unwrap_err(),
            Error::SearchBudgetExceeded { budget: 10 }
        );
    }

    #[test]
    fn large_searches_need_override() {
        let class = ClassSpec::new(2, 4, 4).unwrap();
        let opts = SearchOptions {
            max_elements: 4,
            ..SearchOptions::default()
        };
        assert!(matches!(
            search_excluded(&class, &opts).unwrap_err(),
            Error::InvalidParams(_)
        ));
    }

    #[test]
    fn singleton_search() {
        let class = ClassSpec::new(3, 7, 8).unwrap();
        let opts = SearchOptions {
            max_elements: 1,
            ..SearchOptions::default()
        };
        let out = search_excluded(&class, &opts).unwrap();
        let ms: Vec<i64> = out.records.iter().map(|r| r.polymatroid.total_rank()).collect();
        assert_eq!(ms, vec![3, 4, 5]);
    }

    #[test]
    fn two_element_search_matches_enumeration() {
        let class = ClassSpec::new(2, 4, 4).unwrap();
        let opts = SearchOptions {
            max_elements: 2,
            ..SearchOptions::default()
        };
        let found: Vec<Vec<i64>> = search_excluded(&class, &opts)
            .unwrap()
            .records
            .into_iter()
            .map(|r| r.canonical_form)
            .collect();
        let mut expected: Vec<Vec<i64>> = crate::uniform::enumerate_singleton_excluded(&class)
            .unwrap()
            .into_iter()
            .chain(crate::uniform::enumerate_doubleton_excluded(&class).unwrap())
            .map(|r| r.canonical_form)
            .collect();
        expected.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        assert_eq!(found, expected);
    }
}
