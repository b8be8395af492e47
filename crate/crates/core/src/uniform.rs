//! Uniform minors of k-natural matroids and the classes that exclude
//! `U_{a,b}` and `U_{b−a,b}`.
//!
//! Minors are searched over count vectors: clones of one element are
//! interchangeable, so a minor is determined up to isomorphism by how many
//! clones of each element are contracted (`c`) and kept (`w`).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::compression;
use crate::error::{Error, Result};
use crate::natural::{CountVector, MultisetRankGrid};
use crate::poly::RankTable;
use crate::subset::Subset;

/// The class of k-polymatroids whose k-natural matroid has neither a
/// `U_{a,b}` nor a `U_{b−a,b}` minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct ClassSpec {
    pub a: i64,
    pub b: i64,
    pub k: i64,
}

impl ClassSpec {
    pub fn new(a: i64, b: i64, k: i64) -> Result<Self> {
        if a < 1 || b < 2 * a || k < 1 {
            return Err(Error::InvalidParams(format!(
                "class needs b >= 2a >= 2 and k >= 1, got a = {a}, b = {b}, k = {k}"
            )));
        }
        Ok(ClassSpec { a, b, k })
    }

    /// The excluded uniform matroids as `(rank, size)`, deduplicated.
    pub fn targets(&self) -> Vec<(i64, i64)> {
        let mut t = vec![(self.a, self.b), (self.b - self.a, self.b)];
        t.dedup();
        t
    }

    /// `b >= 2a` and `k >= 2(b−a)`, where the singleton and doubleton
    /// classifications apply.
    pub fn check_regime(&self) -> Result<()> {
        if self.b < 2 * self.a || self.k < 2 * (self.b - self.a) {
            return Err(Error::RegimeViolated(format!(
                "need b >= 2a and k >= 2(b-a), got a = {}, b = {}, k = {}",
                self.a, self.b, self.k
            )));
        }
        Ok(())
    }

    pub fn check_k(&self, table: &RankTable) -> Result<()> {
        if table.k() != self.k {
            return Err(Error::KMismatch {
                table: table.k(),
                class: self.k,
            });
        }
        Ok(())
    }
}

/// Contract `contract` clones and keep `keep` clones per element; the kept
/// clones then form `U_{target.0, target.1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MinorWitness {
    pub contract: CountVector,
    pub keep: CountVector,
    pub target: (i64, i64),
}

/// Whether the kept clones `w` over contraction `c` form `U_{a0,|w|}`:
/// they span rank `a0` and every `a0` of them are independent.
fn is_uniform_restriction(grid: &MultisetRankGrid, c: &[i64], w: &[i64], a0: i64) -> bool {
    fn all_independent(
        grid: &MultisetRankGrid,
        w: &[i64],
        pt: &mut [i64],
        i: usize,
        left: i64,
        target: i64,
    ) -> bool {
        if i == w.len() {
            return grid.value(pt) == target;
        }
        let rest: i64 = w[i + 1..].iter().sum();
        let base = pt[i];
        for v in (left - rest).max(0)..=w[i].min(left) {
            pt[i] = base + v;
            let ok = all_independent(grid, w, pt, i + 1, left - v, target);
            pt[i] = base;
            if !ok {
                return false;
            }
        }
        true
    }
    let base = grid.value(c);
    let top: Vec<i64> = c.iter().zip(w).map(|(x, y)| x + y).collect();
    grid.value(&top) - base == a0 && all_independent(grid, w, &mut c.to_vec(), 0, a0, base + a0)
}

fn search_keep(
    grid: &MultisetRankGrid,
    c: &[i64],
    w: &mut [i64],
    i: usize,
    left: i64,
    a0: i64,
) -> bool {
    let k = grid.k();
    if i == c.len() {
        return left == 0 && is_uniform_restriction(grid, c, w, a0);
    }
    let room: i64 = c[i + 1..].iter().map(|x| k - x).sum();
    let lo = (left - room).max(0);
    for v in lo..=(k - c[i]).min(left) {
        w[i] = v;
        if search_keep(grid, c, w, i + 1, left - v, a0) {
            return true;
        }
    }
    w[i] = 0;
    false
}

/// Whether contracting at least `c` can still leave room for a rank-`a0`
/// minor with nullity `b0 − a0`. Both quantities only shrink as `c` grows.
fn branch_viable(grid: &MultisetRankGrid, c: &[i64], a0: i64, b0: i64) -> bool {
    let k = grid.k();
    let full = vec![k; c.len()];
    let rank = grid.value(&full) - grid.value(c);
    let size: i64 = c.iter().map(|x| k - x).sum();
    rank >= a0 && size - rank >= b0 - a0
}

fn search_contract(
    grid: &MultisetRankGrid,
    c: &mut Vec<i64>,
    i: usize,
    a0: i64,
    b0: i64,
    prune: bool,
) -> Option<MinorWitness> {
    // unassigned coordinates are 0, so c is below every completion
    if prune && !branch_viable(grid, c, a0, b0) {
        return None;
    }
    if i == c.len() {
        let mut w = vec![0; c.len()];
        return search_keep(grid, c, &mut w, 0, b0, a0).then(|| MinorWitness {
            contract: CountVector(c.clone()),
            keep: CountVector(w),
            target: (a0, b0),
        });
    }
    for v in 0..=grid.k() {
        c[i] = v;
        if let Some(found) = search_contract(grid, c, i + 1, a0, b0, prune) {
            return Some(found);
        }
    }
    c[i] = 0;
    None
}

/// A `U_{a0,b0}` minor of the k-natural matroid, searched over count
/// vectors with the rank and nullity cut-offs.
pub fn find_uniform_minor(grid: &MultisetRankGrid, a0: i64, b0: i64) -> Option<MinorWitness> {
    if a0 < 0 || b0 < a0 {
        return None;
    }
    search_contract(grid, &mut vec![0; grid.dim()], 0, a0, b0, true)
}

/// [`find_uniform_minor`] without the cut-offs.
pub fn find_uniform_minor_unpruned(grid: &MultisetRankGrid, a0: i64, b0: i64) -> Option<MinorWitness> {
    if a0 < 0 || b0 < a0 {
        return None;
    }
    search_contract(grid, &mut vec![0; grid.dim()], 0, a0, b0, false)
}

pub fn has_uniform_minor(table: &RankTable, a0: i64, b0: i64) -> Option<MinorWitness> {
    find_uniform_minor(&MultisetRankGrid::new(table), a0, b0)
}

/// Whether a search branch that contracts at least `c` can still reach a
/// minor of the class's excluded matroids. Both need rank and nullity `>= a`.
pub fn nullity_prune(table: &RankTable, c: &CountVector, class: &ClassSpec) -> Result<bool> {
    let grid = MultisetRankGrid::new(table);
    grid.get(c)?;
    Ok(class
        .targets()
        .iter()
        .any(|&(a0, b0)| branch_viable(&grid, &c.0, a0, b0)))
}

/// The first excluded uniform minor found, if any.
pub fn class_witness(grid: &MultisetRankGrid, class: &ClassSpec) -> Option<MinorWitness> {
    class
        .targets()
        .into_iter()
        .find_map(|(a0, b0)| find_uniform_minor(grid, a0, b0))
}

pub fn in_class(table: &RankTable, class: &ClassSpec) -> Result<bool> {
    class.check_k(table)?;
    Ok(class_witness(&MultisetRankGrid::new(table), class).is_none())
}

/// Outside the class while every single-element deletion and contraction
/// is inside. By minor-closure that covers all proper minors.
pub fn is_excluded_minor(table: &RankTable, class: &ClassSpec) -> Result<bool> {
    is_excluded_minor_with(table, class, |t| in_class(t, class))
}

/// [`is_excluded_minor`] with a caller-supplied membership test, for
/// callers that cache class membership.
pub fn is_excluded_minor_with(
    table: &RankTable,
    class: &ClassSpec,
    mut member: impl FnMut(&RankTable) -> Result<bool>,
) -> Result<bool> {
    class.check_k(table)?;
    for e in 0..table.len() {
        let x = Subset::singleton(e);
        if !member(&table.delete(x)?)? || !member(&table.contract(x)?)? {
            return Ok(false);
        }
    }
    Ok(!member(table)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RecordTag {
    /// `Ex^m`
    Singleton { m: i64 },
    /// `Ex_{(ρe,ρf)}^m` with `ρe <= ρf`
    Doubleton { rho_e: i64, rho_f: i64, m: i64 },
    Other,
    /// Every internal compression lies in the class.
    Gamma,
}

impl fmt::Display for RecordTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordTag::Singleton { m } => write!(f, "Ex^{m}"),
            RecordTag::Doubleton { rho_e, rho_f, m } => write!(f, "Ex_({rho_e},{rho_f})^{m}"),
            RecordTag::Other => write!(f, "other"),
            RecordTag::Gamma => write!(f, "gamma"),
        }
    }
}

impl Serialize for RecordTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An excluded minor with its canonical form, shape tags and the uniform
/// minors that keep it out of the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcludedMinorRecord {
    pub polymatroid: RankTable,
    pub canonical_form: Vec<i64>,
    pub tags: Vec<RecordTag>,
    pub witnesses: Vec<MinorWitness>,
}

impl ExcludedMinorRecord {
    /// Builds the record after confirming `table` is an excluded minor.
    pub fn new(table: RankTable, class: &ClassSpec) -> Result<Self> {
        if !is_excluded_minor(&table, class)? {
            return Err(Error::ClassificationMismatch(format!(
                "{table:?} is not an excluded minor"
            )));
        }
        Ok(Self::new_unchecked(table, class))
    }

    pub(crate) fn new_unchecked(table: RankTable, class: &ClassSpec) -> Self {
        let canonical_form = table.canonical_form();
        let shape = match table.len() {
            1 => RecordTag::Singleton {
                m: table.total_rank(),
            },
            2 => {
                let (x, y) = (table.element_rank(0), table.element_rank(1));
                RecordTag::Doubleton {
                    rho_e: x.min(y),
                    rho_f: x.max(y),
                    m: table.total_rank(),
                }
            }
            _ => RecordTag::Other,
        };
        let grid = MultisetRankGrid::new(&table);
        let witnesses = class
            .targets()
            .into_iter()
            .filter_map(|(a0, b0)| find_uniform_minor(&grid, a0, b0))
            .collect();
        ExcludedMinorRecord {
            polymatroid: table,
            canonical_form,
            tags: vec![shape],
            witnesses,
        }
    }

    pub fn shape(&self) -> &RecordTag {
        &self.tags[0]
    }

    pub fn sort_key(&self) -> (usize, &[i64]) {
        (self.polymatroid.len(), &self.canonical_form)
    }
}

/// The excluded singletons, found by direct detection over every rank
/// `m ∈ [0,k]`.
pub fn enumerate_singleton_excluded(class: &ClassSpec) -> Result<Vec<ExcludedMinorRecord>> {
    class.check_regime()?;
    let mut out = Vec::new();
    for m in 0..=class.k {
        let t = RankTable::singleton(class.k, m)?;
        if is_excluded_minor(&t, class)? {
            out.push(ExcludedMinorRecord::new_unchecked(t, class));
        }
    }
    Ok(out)
}

/// Expected status of a doubleton under the singleton/doubleton
/// classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubletonStatus {
    InClass,
    Excluded,
    /// Neither in the class nor an excluded minor: a singleton restriction
    /// is already excluded.
    Neither,
}

/// The table rows containing the doubleton `(ρe, ρf, m)`, `ρe <= ρf`.
/// Rows 6 and 7 overlap when both singleton ranks lie in `[a, k−a]`.
pub fn doubleton_rows(a: i64, k: i64, rho_e: i64, rho_f: i64, m: i64) -> Vec<u8> {
    let low = |x: i64| (0..=a - 1).contains(&x);
    let high = |x: i64| (k - a + 1..=k).contains(&x);
    let mid = |x: i64| (a..=k - a).contains(&x);
    let mut rows = Vec::new();
    if low(rho_e) && low(rho_f) && (rho_f..=rho_e + rho_f).contains(&m) {
        rows.push(1);
    }
    if low(rho_e) && high(rho_f) && (rho_e + k - a + 1..=rho_e + rho_f).contains(&m) {
        rows.push(2);
    }
    if (1..=a - 1).contains(&rho_e) && high(rho_f) && (rho_f..=rho_e + k - a).contains(&m) {
        rows.push(3);
    }
    if high(rho_e) && high(rho_f) && (rho_f + k - a + 1..=rho_e + rho_f).contains(&m) {
        rows.push(4);
    }
    if high(rho_e) && high(rho_f) && (rho_f..=rho_f + k - a).contains(&m) {
        rows.push(5);
    }
    if mid(rho_f) {
        rows.push(6);
    }
    if mid(rho_e) {
        rows.push(7);
    }
    rows
}

pub fn doubleton_status(a: i64, k: i64, rho_e: i64, rho_f: i64, m: i64) -> Option<DoubletonStatus> {
    match doubleton_rows(a, k, rho_e, rho_f, m).first()? {
        1 | 2 | 4 => Some(DoubletonStatus::InClass),
        3 | 5 => Some(DoubletonStatus::Excluded),
        _ => Some(DoubletonStatus::Neither),
    }
}

/// All valid doubletons `(ρe <= ρf, m)` for level `k`.
pub fn doubleton_triples(k: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (0..=k).flat_map(move |re| {
        (re..=k).flat_map(move |rf| (rf..=re + rf).map(move |m| (re, rf, m)))
    })
}

/// Every doubleton lies in at least one row, and rows 1 to 5 are pairwise
/// disjoint.
pub fn doubleton_row_coverage(a: i64, k: i64) -> bool {
    doubleton_triples(k).all(|(re, rf, m)| {
        let rows = doubleton_rows(a, k, re, rf, m);
        !rows.is_empty() && rows.iter().filter(|&&r| r <= 5).count() <= 1
    })
}

/// The excluded doubletons `ρe <= ρf`, found by direct detection over every
/// valid triple. The row table is not consulted; see
/// [`doubleton_table_discrepancies`] for how the two compare.
pub fn enumerate_doubleton_excluded(class: &ClassSpec) -> Result<Vec<ExcludedMinorRecord>> {
    class.check_regime()?;
    let mut out = Vec::new();
    for (re, rf, m) in doubleton_triples(class.k) {
        let t = RankTable::doubleton(class.k, re, rf, m)?;
        if is_excluded_minor(&t, class)? {
            out.push(ExcludedMinorRecord::new_unchecked(t, class));
        }
    }
    Ok(out)
}

/// The triples rows 3 and 5 mark as excluded minors.
pub fn table_excluded_doubletons(a: i64, k: i64) -> Vec<(i64, i64, i64)> {
    doubleton_triples(k)
        .filter(|&(re, rf, m)| doubleton_status(a, k, re, rf, m) == Some(DoubletonStatus::Excluded))
        .collect()
}

/// Status of a doubleton by direct detection.
pub fn detect_doubleton_status(table: &RankTable, class: &ClassSpec) -> Result<DoubletonStatus> {
    Ok(if in_class(table, class)? {
        DoubletonStatus::InClass
    } else if is_excluded_minor(table, class)? {
        DoubletonStatus::Excluded
    } else {
        DoubletonStatus::Neither
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowDiscrepancy {
    pub rho_e: i64,
    pub rho_f: i64,
    pub m: i64,
    pub rows: Vec<u8>,
    pub predicted: String,
    pub detected: String,
}

/// Doubletons whose row status differs from direct detection.
pub fn doubleton_table_discrepancies(class: &ClassSpec) -> Result<Vec<RowDiscrepancy>> {
    class.check_regime()?;
    let mut out = Vec::new();
    for (re, rf, m) in doubleton_triples(class.k) {
        let predicted = doubleton_status(class.a, class.k, re, rf, m).ok_or(Error::NotInTable {
            rho_e: re,
            rho_f: rf,
            m,
        })?;
        let detected = detect_doubleton_status(&RankTable::doubleton(class.k, re, rf, m)?, class)?;
        if predicted != detected {
            out.push(RowDiscrepancy {
                rho_e: re,
                rho_f: rf,
                m,
                rows: doubleton_rows(class.a, class.k, re, rf, m),
                predicted: format!("{predicted:?}"),
                detected: format!("{detected:?}"),
            });
        }
    }
    Ok(out)
}

/// `a(−2a² + 3ak + 3k + 2) / 6`, the number of excluded doubletons.
pub fn count_formula(a: i64, k: i64) -> Result<i64> {
    let num = a * (-2 * a * a + 3 * a * k + 3 * k + 2);
    if num % 6 != 0 {
        return Err(Error::NonIntegerResult { a, k });
    }
    Ok(num / 6)
}

/// Every record's k-dual is again an excluded minor and, when its size is
/// within the records' range, is among the records up to isomorphism.
pub fn dual_closure_check(records: &[ExcludedMinorRecord], class: &ClassSpec) -> Result<bool> {
    let max_len = records.iter().map(|r| r.polymatroid.len()).max().unwrap_or(0);
    let forms: std::collections::HashSet<&[i64]> =
        records.iter().map(|r| r.canonical_form.as_slice()).collect();
    for r in records {
        let d = r.polymatroid.k_dual()?;
        if !is_excluded_minor(&d, class)? {
            return Ok(false);
        }
        if d.len() <= max_len && !forms.contains(d.canonical_form().as_slice()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Records whose internal compressions all stay in the class have at most
/// `b` elements.
pub fn gamma_size_check(records: &[ExcludedMinorRecord], class: &ClassSpec) -> Result<bool> {
    for r in records {
        if compression::is_in_gamma(&r.polymatroid, class)? && r.polymatroid.len() as i64 > class.b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No record has loops or parallel points.
pub fn simplification_check(records: &[ExcludedMinorRecord]) -> bool {
    records.iter().all(|r| r.polymatroid.is_simple())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c378() -> ClassSpec {
        ClassSpec::new(3, 7, 8).unwrap()
    }

    #[test]
    fn singleton_detection() {
        let class = c378();
        let w = has_uniform_minor(&RankTable::singleton(8, 4).unwrap(), 3, 7).unwrap();
        assert_eq!(w.keep.total(), 7);
        assert!(w.contract.0[0] + w.keep.0[0] <= 8);
        assert!(has_uniform_minor(&RankTable::singleton(8, 2).unwrap(), 3, 7).is_none());
        for m in 0..=8 {
            let t = RankTable::singleton(8, m).unwrap();
            assert_eq!(in_class(&t, &class).unwrap(), !(3..=5).contains(&m), "m = {m}");
        }
    }

    #[test]
    fn uniform_matroid_contains_itself() {
        let u = RankTable::uniform(2, 4).unwrap();
        assert!(has_uniform_minor(&u, 2, 4).is_some());
        assert!(has_uniform_minor(&u, 2, 5).is_none());
        assert!(has_uniform_minor(&u, 1, 3).is_some());
    }

    #[test]
    fn pruned_matches_unpruned() {
        for (re, rf, m) in doubleton_triples(4) {
            let g = MultisetRankGrid::new(&RankTable::doubleton(4, re, rf, m).unwrap());
            for (a0, b0) in [(2, 4), (1, 3), (2, 5), (3, 4)] {
                assert_eq!(
                    find_uniform_minor(&g, a0, b0).is_some(),
                    find_uniform_minor_unpruned(&g, a0, b0).is_some()
                );
            }
        }
    }

    #[test]
    fn nullity_prune_examples() {
        let class = c378();
        let six = RankTable::singleton(8, 6).unwrap();
        assert!(!nullity_prune(&six, &CountVector::zeros(1), &class).unwrap());
        let four = RankTable::singleton(8, 4).unwrap();
        assert!(nullity_prune(&four, &CountVector::zeros(1), &class).unwrap());
    }

    #[test]
    fn k_must_match() {
        let t = RankTable::singleton(4, 2).unwrap();
        assert_eq!(
            in_class(&t, &c378()).unwrap_err(),
            Error::KMismatch { table: 4, class: 8 }
        );
    }

    #[test]
    fn excluded_examples() {
        let class = c378();
        assert!(is_excluded_minor(&RankTable::doubleton(8, 6, 6, 8).unwrap(), &class).unwrap());
        assert!(!is_excluded_minor(&RankTable::doubleton(8, 1, 6, 6).unwrap(), &class).unwrap());
        assert!(is_excluded_minor(&RankTable::singleton(8, 3).unwrap(), &class).unwrap());
        assert!(!is_excluded_minor(&RankTable::singleton(8, 7).unwrap(), &class).unwrap());
    }

    #[test]
    fn formula_values() {
        assert_eq!(count_formula(3, 8).unwrap(), 40);
        assert_eq!(count_formula(2, 4).unwrap(), 10);
        for k in 1..10 {
            assert_eq!(count_formula(1, k).unwrap(), k);
        }
        assert!(doubleton_row_coverage(3, 8));
        assert!(doubleton_row_coverage(2, 4));
    }

    #[test]
    fn regime_is_enforced() {
        let small = ClassSpec::new(3, 7, 6).unwrap();
        assert!(matches!(
            enumerate_singleton_excluded(&small).unwrap_err(),
            Error::RegimeViolated(_)
        ));
        assert!(ClassSpec::new(3, 5, 8).is_err());
    }

    #[test]
    fn singleton_enumeration() {
        let recs = enumerate_singleton_excluded(&c378()).unwrap();
        let ms: Vec<String> = recs.iter().map(|r| r.shape().to_string()).collect();
        assert_eq!(ms, vec!["Ex^3", "Ex^4", "Ex^5"]);
        assert!(dual_closure_check(&recs, &c378()).unwrap());
        assert!(simplification_check(&recs));
    }

    #[test]
    fn doubleton_enumeration_small() {
        let class = ClassSpec::new(2, 4, 4).unwrap();
        let recs = enumerate_doubleton_excluded(&class).unwrap();
        let shapes: Vec<String> = recs.iter().map(|r| r.shape().to_string()).collect();
        assert_eq!(
            shapes,
            ["Ex_(3,3)^3", "Ex_(3,3)^4", "Ex_(3,4)^4", "Ex_(4,4)^4", "Ex_(4,4)^5"]
        );
        assert!(dual_closure_check(&recs, &class).unwrap());
        assert_eq!(table_excluded_doubletons(2, 4).len(), 10);
        // (1,3,3): contracting e leaves a rank-2 singleton, itself excluded
        let d = doubleton_table_discrepancies(&class).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!((d[0].rho_e, d[0].rho_f, d[0].m), (1, 3, 3));
        assert!(d.iter().all(|x| x.detected == "Neither"));
    }
}
