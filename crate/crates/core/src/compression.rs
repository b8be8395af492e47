//! l-compressions: freely add `l` points to `e`, contract them, delete `e`.
//!
//! Computed on the multiset rank grid as
//! `ρ↓e^l(A) = R(k·1_A + l·1_e) − R(l·1_e)` for `A ⊆ E − e`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::natural::MultisetRankGrid;
use crate::poly::RankTable;
use crate::subset::{all_subsets, Subset};
use crate::uniform::{in_class, is_excluded_minor, ClassSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CompressionStep {
    pub element: String,
    pub l: i64,
}

/// Compression over an existing grid of `ρ`.
pub fn compress_with_grid(grid: &MultisetRankGrid, e: usize, l: i64) -> Result<RankTable> {
    let table = grid.table();
    let k = table.k();
    if e >= table.len() {
        return Err(Error::UnknownElement(format!("#{e}")));
    }
    if !(0..=k).contains(&l) {
        return Err(Error::LevelOutOfRange { level: l, k });
    }
    let n = table.len();
    let kept = Subset::full(n).without(e);
    let mut point = vec![0i64; n];
    point[e] = l;
    let base = grid.value(&point);
    let ranks = all_subsets(n - 1)
        .map(|s| {
            let a = s.expand_from(kept);
            for (i, slot) in point.iter_mut().enumerate() {
                if i != e {
                    *slot = if a.contains(i) { k } else { 0 };
                }
            }
            grid.value(&point) - base
        })
        .collect();
    RankTable::new(table.ground().restrict(kept), k, ranks)
}

pub fn compress(table: &RankTable, e: usize, l: i64) -> Result<RankTable> {
    compress_with_grid(&MultisetRankGrid::new(table), e, l)
}

pub fn compress_label(table: &RankTable, label: &str, l: i64) -> Result<RankTable> {
    compress(table, table.ground().index_of(label)?, l)
}

/// Internal compressions `(e, l)` with `1 <= l <= ρ(e) − 1`, in ground order
/// then increasing `l`.
pub fn internal_compressions(table: &RankTable) -> impl Iterator<Item = (usize, i64)> + '_ {
    (0..table.len()).flat_map(move |e| (1..table.element_rank(e)).map(move |l| (e, l)))
}

fn require_excluded(table: &RankTable, class: &ClassSpec) -> Result<()> {
    if !is_excluded_minor(table, class)? {
        return Err(Error::NotExcludedMinor);
    }
    Ok(())
}

/// The first internal compression, in [`internal_compressions`] order, that
/// leaves the class.
fn first_escape(table: &RankTable, class: &ClassSpec) -> Result<Option<(usize, i64, RankTable)>> {
    let grid = MultisetRankGrid::new(table);
    for (e, l) in internal_compressions(table) {
        let c = compress_with_grid(&grid, e, l)?;
        if !in_class(&c, class)? {
            return Ok(Some((e, l, c)));
        }
    }
    Ok(None)
}

/// Whether every internal compression of the excluded minor `table` lies in
/// the class.
pub fn is_in_gamma(table: &RankTable, class: &ClassSpec) -> Result<bool> {
    require_excluded(table, class)?;
    Ok(first_escape(table, class)?.is_none())
}

/// Repeatedly takes the least internal compression leaving the class until
/// none does. Each intermediate table is checked to be an excluded minor.
pub fn compression_chain(
    table: &RankTable,
    class: &ClassSpec,
) -> Result<Vec<(CompressionStep, RankTable)>> {
    require_excluded(table, class)?;
    let mut chain = Vec::new();
    let mut cur = table.clone();
    while let Some((e, l, next)) = first_escape(&cur, class)? {
        if !is_excluded_minor(&next, class)? {
            return Err(Error::ClassificationMismatch(format!(
                "compressing {} at level {l} left the class without giving an excluded minor",
                cur.ground().label(e)
            )));
        }
        chain.push((
            CompressionStep {
                element: cur.ground().label(e).to_string(),
                l,
            },
            next.clone(),
        ));
        cur = next;
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> RankTable {
        RankTable::doubleton(3, 3, 2, 4).unwrap()
    }

    #[test]
    fn example_levels() {
        let r = example();
        assert_eq!(compress(&r, 0, 2).unwrap().ranks(), &[0, 2]);
        assert_eq!(compress(&r, 0, 0).unwrap(), r.delete(Subset(1)).unwrap());
        let top = compress(&r, 0, 3).unwrap();
        assert_eq!(top, r.contract(Subset(1)).unwrap());
        assert_eq!(top.ranks(), &[0, 1]);
        assert_eq!(compress_label(&r, "f", 2).unwrap(), r.contract(Subset(2)).unwrap());
    }

    #[test]
    fn level_and_element_errors() {
        let r = example();
        assert!(matches!(
            compress(&r, 0, 4).unwrap_err(),
            Error::LevelOutOfRange { level: 4, k: 3 }
        ));
        assert!(matches!(
            compress_label(&r, "z", 1).unwrap_err(),
            Error::UnknownElement(_)
        ));
    }

    #[test]
    fn singleton_excluded_minors_are_in_gamma() {
        let class = ClassSpec::new(3, 7, 8).unwrap();
        for m in 3..=5 {
            let t = RankTable::singleton(8, m).unwrap();
            assert!(is_in_gamma(&t, &class).unwrap());
            assert!(compression_chain(&t, &class).unwrap().is_empty());
        }
        assert_eq!(
            is_in_gamma(&RankTable::singleton(8, 7).unwrap(), &class).unwrap_err(),
            Error::NotExcludedMinor
        );
    }

    #[test]
    fn chains_end_in_gamma() {
        let class = ClassSpec::new(3, 7, 8).unwrap();
        let t = RankTable::doubleton(8, 6, 6, 6).unwrap();
        let chain = compression_chain(&t, &class).unwrap();
        let last = chain.last().map_or(&t, |(_, r)| r);
        assert!(is_in_gamma(last, &class).unwrap());
        assert!(chain.len() <= t.len());
    }
}
