//! n-corner decompositions `ρ = τ + (k−n)·r`, with `τ` an n-polymatroid and
//! `r` a direct sum of loops and coloops.
//!
//! For `k >= 2n+1` the decomposition is unique when it exists: `r` has a
//! coloop exactly at the elements of rank `> n`.

use serde::Serialize;

use crate::compression::compress;
use crate::error::{Error, Result};
use crate::natural::CountVector;
use crate::poly::{validate, MaxSepMatroid, RankTable};
use crate::polytope::lattice_points;
use crate::subset::{all_subsets, Subset};
use crate::uniform::doubleton_rows;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerDecomposition {
    pub n: i64,
    /// Level of the decomposed polymatroid.
    pub k: i64,
    pub tau: RankTable,
    pub r: MaxSepMatroid,
}

impl CornerDecomposition {
    pub fn coloops(&self) -> Subset {
        self.r.coloops()
    }

    /// `τ + (k−n)·r`.
    pub fn reconstruct(&self) -> Result<RankTable> {
        let scale = self.k - self.n;
        let ground = self.tau.ground().clone();
        RankTable::from_fn(ground, self.k, |s| self.tau.rank(s) + scale * self.r.rank(s))
    }

    pub fn region(&self) -> CornerRegion {
        let n = self.tau.len();
        CornerRegion {
            n: self.n,
            anchor: CountVector::indicator(n, self.coloops(), self.k - self.n),
        }
    }
}

/// The box `Π_e [anchor_e, anchor_e + n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerRegion {
    pub n: i64,
    pub anchor: CountVector,
}

impl CornerRegion {
    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.anchor.len()
            && x
                .iter()
                .zip(&self.anchor.0)
                .all(|(v, a)| (*a..=a + self.n).contains(v))
    }

    /// Corners of `[0,k]^E` at this size are pairwise disjoint iff `2n < k`.
    pub fn corners_disjoint(&self, k: i64) -> bool {
        2 * self.n < k
    }
}

/// `ρe + ρf − m` for a doubleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BetaTilde {
    pub value: i64,
}

impl BetaTilde {
    pub fn of(table: &RankTable) -> Result<Self> {
        if table.len() != 2 {
            return Err(Error::InvalidParams(format!(
                "beta is defined for doubletons, got {} elements",
                table.len()
            )));
        }
        Ok(BetaTilde {
            value: table.element_rank(0) + table.element_rank(1) - table.total_rank(),
        })
    }
}

/// The decomposition with coloop set `coloops`, if `τ` is an n-polymatroid.
pub fn decompose_with_coloops(table: &RankTable, n: i64, coloops: Subset) -> Result<CornerDecomposition> {
    let scale = table.k() - n;
    let ranks = all_subsets(table.len())
        .map(|s| table.rank(s) - scale * (s & coloops).len() as i64)
        .collect();
    let tau = validate(table.ground().clone(), n, ranks).map_err(|e| Error::NotDecomposable {
        n,
        reason: format!("tau fails: {e}"),
    })?;
    Ok(CornerDecomposition {
        n,
        k: table.k(),
        tau,
        r: MaxSepMatroid::new(table.ground().clone(), coloops)?,
    })
}

/// The unique n-corner decomposition, for `2n+1 <= k`.
pub fn corner_decompose(table: &RankTable, n: i64) -> Result<CornerDecomposition> {
    if n < 0 {
        return Err(Error::InvalidParams(format!("n must be nonnegative, got {n}")));
    }
    if 2 * n + 1 > table.k() {
        return Err(Error::UniquenessRegimeViolated { n, k: table.k() });
    }
    let coloops = (0..table.len())
        .filter(|&e| table.element_rank(e) > n)
        .fold(Subset::EMPTY, Subset::with);
    decompose_with_coloops(table, n, coloops)
}

/// Every n-corner decomposition, one per admissible coloop set, in coloop
/// mask order.
pub fn corner_decompose_exhaustive(table: &RankTable, n: i64) -> Result<Vec<CornerDecomposition>> {
    if !(0..=table.k()).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "n must lie in [0,{}], got {n}",
            table.k()
        )));
    }
    Ok(all_subsets(table.len())
        .filter_map(|c| decompose_with_coloops(table, n, c).ok())
        .collect())
}

/// The least `n` with an n-corner decomposition and the decomposition at
/// that level. Outside the uniqueness regime the smallest coloop mask wins.
pub fn essential_bound(table: &RankTable) -> (i64, CornerDecomposition) {
    for n in 0..=table.k() {
        let found = if 2 * n < table.k() {
            corner_decompose(table, n).ok()
        } else {
            corner_decompose_exhaustive(table, n)
                .ok()
                .and_then(|v| v.into_iter().next())
        };
        if let Some(d) = found {
            return (n, d);
        }
    }
    unreachable!("n = k with no coloops always decomposes")
}

fn glue_values(
    n: usize,
    e: usize,
    del: impl Fn(Subset) -> i64,
    cont: impl Fn(Subset) -> i64,
    res_e: i64,
) -> Vec<i64> {
    let rest = Subset::full(n).without(e);
    all_subsets(n)
        .map(|a| {
            if a.contains(e) {
                res_e + cont(a.without(e).compress_to(rest))
            } else {
                del(a.compress_to(rest))
            }
        })
        .collect()
}

/// Glues decompositions of `ρ∖e`, `ρ/e` and `ρ|e` into one of `ρ`: each
/// part is taken from the deletion off `e` and from restriction plus
/// contraction on it.
pub fn glue_decomposition(
    table: &RankTable,
    e: usize,
    del: &CornerDecomposition,
    cont: &CornerDecomposition,
    res: &CornerDecomposition,
) -> Result<CornerDecomposition> {
    let m = del.n;
    if cont.n != m || res.n != m {
        return Err(Error::LevelMismatch);
    }
    let k = table.k();
    if k < 3 * m + 1 {
        return Err(Error::RegimeViolated(format!(
            "gluing needs k >= 3m+1, got k = {k}, m = {m}"
        )));
    }
    let n = table.len();
    if e >= n || del.tau.len() + 1 != n || cont.tau.len() + 1 != n || res.tau.len() != 1 {
        return Err(Error::ReconstructionFailure(
            "parts do not match the ground set".into(),
        ));
    }
    let tau = glue_values(
        n,
        e,
        |s| del.tau.rank(s),
        |s| cont.tau.rank(s),
        res.tau.total_rank(),
    );
    let r = glue_values(
        n,
        e,
        |s| del.r.rank(s),
        |s| cont.r.rank(s),
        res.r.rank(Subset::full(1)),
    );
    // r must again be loops and coloops: every f ≠ e is a coloop of both or
    // of neither of r_del and r_cont
    let rest = Subset::full(n).without(e);
    if del.coloops() != cont.coloops() {
        return Err(Error::ReconstructionFailure(
            "deletion and contraction disagree on the coloops".into(),
        ));
    }
    let mut coloops = del.coloops().expand_from(rest);
    if res.coloops() == Subset::full(1) {
        coloops = coloops.with(e);
    }
    debug_assert!(all_subsets(n).all(|s| r[s.index()] == (s & coloops).len() as i64));
    let tau = validate(table.ground().clone(), m, tau)
        .map_err(|err| Error::ReconstructionFailure(format!("glued tau fails: {err}")))?;
    let glued = CornerDecomposition {
        n: m,
        k,
        tau,
        r: MaxSepMatroid::new(table.ground().clone(), coloops)?,
    };
    if glued.reconstruct()? != *table {
        return Err(Error::ReconstructionFailure(
            "glued parts do not sum to the polymatroid".into(),
        ));
    }
    Ok(glued)
}

/// Minor `ρ / contract` restricted to `kept`, deleting everything else.
fn small_minor(table: &RankTable, kept: Subset, contract: Subset) -> Result<RankTable> {
    let delete = Subset::full(table.len()) - kept - contract;
    table.minor(contract, delete)
}

fn describe_minor(table: &RankTable, kept: Subset, contract: Subset) -> String {
    let g = table.ground();
    let delete = Subset::full(table.len()) - kept - contract;
    format!(
        "on {} contracting {} deleting {}",
        g.describe(kept),
        g.describe(contract),
        g.describe(delete)
    )
}

/// The first singleton or doubleton minor without an m-corner
/// decomposition. Singletons come first; within a ground set the all-delete
/// minor (the restriction) is tried first.
pub fn failing_small_minor(table: &RankTable, m: i64) -> Result<Option<String>> {
    let n = table.len();
    let mut small: Vec<Subset> = (0..n).map(Subset::singleton).collect();
    small.extend(all_subsets(n).filter(|s| s.len() == 2));
    for kept in small {
        let rest = Subset::full(n) - kept;
        for contract in rest.subsets() {
            let minor = small_minor(table, kept, contract)?;
            if corner_decompose(&minor, m).is_err() {
                return Ok(Some(describe_minor(table, kept, contract)));
            }
        }
    }
    Ok(None)
}

/// Builds an m-corner decomposition from those of the singleton and
/// doubleton minors, recursing on the first element: decompose the deletion
/// and contraction, decompose the restriction, glue.
pub fn decompose_via_minors(table: &RankTable, m: i64) -> Result<CornerDecomposition> {
    if m < 0 || table.k() < 3 * m + 1 {
        return Err(Error::RegimeViolated(format!(
            "need k >= 3m+1 and m >= 0, got k = {}, m = {m}",
            table.k()
        )));
    }
    if let Some(minor) = failing_small_minor(table, m)? {
        return Err(Error::MinorNotDecomposable { minor, m });
    }
    glue_recursive(table, m)
}

fn glue_recursive(table: &RankTable, m: i64) -> Result<CornerDecomposition> {
    if table.len() <= 2 {
        return corner_decompose(table, m).map_err(|_| Error::MinorNotDecomposable {
            minor: table.ground().describe(Subset::full(table.len())),
            m,
        });
    }
    let e = Subset::singleton(0);
    let del = glue_recursive(&table.delete(e)?, m)?;
    let cont = glue_recursive(&table.contract(e)?, m)?;
    let res = corner_decompose(&table.restrict(e)?, m)?;
    glue_decomposition(table, 0, &del, &cont, &res)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CollapseTag {
    Deletion,
    Contraction,
}

/// The tag the case split predicts: contraction once `l` reaches `ρ(e)`.
pub fn predicted_collapse(table: &RankTable, e: usize, l: i64) -> CollapseTag {
    if l >= table.element_rank(e) {
        CollapseTag::Contraction
    } else {
        CollapseTag::Deletion
    }
}

/// For an essentially m-bounded `ρ` and `m <= l <= k−m`, checks that the
/// l-compression by `e` is the deletion or the contraction and says which.
/// When both coincide the predicted tag is reported.
pub fn compression_collapse(table: &RankTable, e: usize, l: i64) -> Result<CollapseTag> {
    let (m, _) = essential_bound(table);
    collapse_at_level(table, m, e, l)
}

fn collapse_at_level(table: &RankTable, m: i64, e: usize, l: i64) -> Result<CollapseTag> {
    let k = table.k();
    if l < m || l > k - m {
        return Err(Error::HypothesisViolated {
            level: l,
            lo: m,
            hi: k - m,
        });
    }
    let c = compress(table, e, l)?;
    let x = Subset::singleton(e);
    let is_del = c == table.delete(x)?;
    let is_con = c == table.contract(x)?;
    let predicted = predicted_collapse(table, e, l);
    match (is_del, is_con) {
        (true, true) => Ok(predicted),
        (true, false) => Ok(CollapseTag::Deletion),
        (false, true) => Ok(CollapseTag::Contraction),
        (false, false) => Err(Error::CollapseFailed {
            element: table.ground().label(e).to_string(),
            level: l,
        }),
    }
}

/// `(element, l, tag)` for every element and every `l ∈ [m, k−m]`.
pub fn collapse_table(table: &RankTable) -> Result<Vec<(String, i64, CollapseTag)>> {
    let (m, _) = essential_bound(table);
    let mut out = Vec::new();
    for e in 0..table.len() {
        for l in m..=table.k() - m {
            let tag = collapse_at_level(table, m, e, l)?;
            out.push((table.ground().label(e).to_string(), l, tag));
        }
    }
    Ok(out)
}

/// Whether every lattice point of `B_ρ` lies in the corner of `d`.
pub fn corner_confinement(table: &RankTable, d: &CornerDecomposition) -> bool {
    let region = d.region();
    lattice_points(table, true).iter().all(|p| region.contains(p))
}

/// The (a−1)-corner decomposition of an in-class doubleton `(ρe, ρf, m)`,
/// built as `τ = β̃·U12 + ((τe−β̃)·U11 ⊕ (τf−β̃)·U11)` where `τe`, `τf` are
/// `τ`'s singleton ranks.
pub fn doubleton_canonical_tau(
    rho_e: i64,
    rho_f: i64,
    m: i64,
    a: i64,
    k: i64,
) -> Result<CornerDecomposition> {
    let not_in_table = || Error::NotInTable { rho_e, rho_f, m };
    let (lo, hi) = (rho_e.min(rho_f), rho_e.max(rho_f));
    let rows = doubleton_rows(a, k, lo, hi, m);
    if !matches!(rows.first(), Some(1 | 2 | 4)) {
        return Err(not_in_table());
    }
    let n = a - 1;
    let table = RankTable::doubleton(k, rho_e, rho_f, m).map_err(|_| not_in_table())?;
    let coloops = (0..2)
        .filter(|&e| table.element_rank(e) > n)
        .fold(Subset::EMPTY, Subset::with);
    let scale = k - n;
    let tau_e = rho_e - scale * coloops.contains(0) as i64;
    let tau_f = rho_f - scale * coloops.contains(1) as i64;
    let beta = BetaTilde::of(&table)?.value;
    let ground = table.ground().clone();

    let one = |c: i64, label: &str| -> Result<RankTable> {
        RankTable::uniform(1, 1)?
            .scalar_multiply(c)?
            .relabel(crate::ground::GroundSet::new([label])?)
    };
    let (pe, pf) = (tau_e - beta, tau_f - beta);
    if beta < 0 || pe < 0 || pf < 0 {
        return Err(not_in_table());
    }
    let level = pe.max(pf);
    let sum = one(pe, "e")?
        .with_k(level)?
        .direct_sum(&one(pf, "f")?.with_k(level)?)?;
    let tau = RankTable::uniform(1, 2)?
        .scalar_multiply(beta)?
        .add(&sum)?
        .with_k(n)?
        .relabel(ground.clone())?;
    let d = CornerDecomposition {
        n,
        k,
        tau,
        r: MaxSepMatroid::new(ground, coloops)?,
    };
    if d.reconstruct()? != table {
        return Err(Error::ReconstructionFailure(format!(
            "({rho_e},{rho_f}) with total {m} does not reconstruct"
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_corner_examples() {
        for k in 3..=9 {
            let d = corner_decompose(&RankTable::singleton(k, k - 1).unwrap(), 1).unwrap();
            assert_eq!(d.tau.ranks(), &[0, 0]);
            assert_eq!(d.coloops(), Subset(1));
            let d = corner_decompose(&RankTable::doubleton(k, k, k, 2 * k - 1).unwrap(), 1).unwrap();
            assert_eq!(d.tau.ranks(), &[0, 1, 1, 1]);
            assert_eq!(d.coloops(), Subset(3));
        }
        assert!(matches!(
            corner_decompose(&RankTable::singleton(8, 4).unwrap(), 1).unwrap_err(),
            Error::NotDecomposable { n: 1, .. }
        ));
        assert!(matches!(
            corner_decompose(&RankTable::singleton(3, 1).unwrap(), 2).unwrap_err(),
            Error::UniquenessRegimeViolated { n: 2, k: 3 }
        ));
    }

    #[test]
    fn one_corner_doubleton_table() {
        for k in 3..=10 {
            let rows = [
                ((k - 1, k - 1, 2 * k - 2), [0, 0, 0, 0], 3),
                ((k, k, 2 * k - 1), [0, 1, 1, 1], 3),
                ((k, k, 2 * k), [0, 1, 1, 2], 3),
                ((1, k - 1, k), [0, 1, 0, 1], 2),
                ((1, k, k), [0, 1, 1, 1], 2),
                ((1, k, k + 1), [0, 1, 1, 2], 2),
                ((k - 1, k, 2 * k - 1), [0, 0, 1, 1], 3),
            ];
            for ((e, f, m), tau, coloops) in rows {
                let t = RankTable::doubleton(k, e, f, m).unwrap();
                let d = corner_decompose(&t, 1).unwrap();
                assert_eq!(d.tau.ranks(), &tau, "({e},{f},{m}) at k = {k}");
                assert_eq!(d.coloops(), Subset(coloops));
                assert_eq!(d.reconstruct().unwrap(), t);
            }
            for m in [0, 1, k - 1, k] {
                assert!(corner_decompose(&RankTable::singleton(k, m).unwrap(), 1).is_ok());
            }
        }
    }

    #[test]
    fn two_corner_table() {
        let class = crate::uniform::ClassSpec::new(3, 7, 8).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for ((te, tf, tef), row) in crate::verify::TWO_CORNER_TABLE {
            for (coloops, (e, f, m)) in [0u32, 2, 3].into_iter().zip(row) {
                let t = RankTable::doubleton(8, e, f, m).unwrap();
                let d = corner_decompose(&t, 2).unwrap();
                assert_eq!(d.tau.ranks(), &[0, te, tf, tef]);
                assert_eq!(d.coloops(), Subset(coloops));
                assert_eq!(decompose_via_minors(&t, 2).unwrap(), d);
                assert!(corner_confinement(&t, &d));
                assert!(crate::uniform::in_class(&t, &class).unwrap());
                seen.insert(t.canonical_form());
            }
        }
        let members = crate::uniform::doubleton_triples(8)
            .map(|(e, f, m)| RankTable::doubleton(8, e, f, m).unwrap())
            .filter(|t| crate::uniform::in_class(t, &class).unwrap())
            .map(|t| t.canonical_form())
            .collect::<std::collections::BTreeSet<_>>();
        assert_eq!(seen.len(), 34);
        assert_eq!(seen, members);
    }

    #[test]
    fn exhaustive_and_bounds() {
        let r = RankTable::doubleton(3, 3, 2, 4).unwrap();
        assert!(!corner_decompose_exhaustive(&r, 3).unwrap().is_empty());
        let (m, d) = essential_bound(&RankTable::singleton(5, 5).unwrap());
        assert_eq!((m, d.coloops()), (0, Subset(1)));
        let (m, d) = essential_bound(&RankTable::singleton(3, 1).unwrap());
        assert_eq!((m, d.coloops()), (1, Subset::EMPTY));
        assert_eq!(d.tau.ranks(), &[0, 1]);
    }

    #[test]
    fn gluing_matches_direct() {
        let t = RankTable::from_fn(crate::ground::GroundSet::standard(3), 7, |s| {
            [0, 7, 14, 20][s.len()]
        })
        .unwrap();
        let direct = corner_decompose(&t, 1).unwrap();
        assert_eq!(decompose_via_minors(&t, 1).unwrap(), direct);
        let e = Subset(1);
        let glued = glue_decomposition(
            &t,
            0,
            &corner_decompose(&t.delete(e).unwrap(), 1).unwrap(),
            &corner_decompose(&t.contract(e).unwrap(), 1).unwrap(),
            &corner_decompose(&t.restrict(e).unwrap(), 1).unwrap(),
        )
        .unwrap();
        assert_eq!(glued, direct);
    }

    #[test]
    fn minors_name_the_failure() {
        let t = RankTable::doubleton(8, 4, 1, 5).unwrap();
        match decompose_via_minors(&t, 2).unwrap_err() {
            Error::MinorNotDecomposable { minor, m: 2 } => {
                assert_eq!(minor, "on {e} contracting {} deleting {f}")
            }
            other => panic!("{other:?}"),
        }
        let empty = RankTable::empty(8);
        assert_eq!(decompose_via_minors(&empty, 2).unwrap().tau.ranks(), &[0]);
    }

    #[test]
    fn level_mismatch() {
        let s = RankTable::singleton(8, 1).unwrap();
        let a = corner_decompose(&s, 1).unwrap();
        let b = corner_decompose(&s, 2).unwrap();
        let t = RankTable::doubleton(8, 1, 1, 2).unwrap();
        assert_eq!(
            glue_decomposition(&t, 0, &a, &a, &b).unwrap_err(),
            Error::LevelMismatch
        );
    }

    #[test]
    fn collapse_examples() {
        let t = RankTable::doubleton(8, 7, 1, 8).unwrap();
        let (m, _) = essential_bound(&t);
        assert_eq!(m, 1);
        assert_eq!(compression_collapse(&t, 0, 7).unwrap(), CollapseTag::Contraction);
        assert_eq!(compression_collapse(&t, 0, 3).unwrap(), CollapseTag::Deletion);
        assert!(matches!(
            compression_collapse(&t, 0, 0).unwrap_err(),
            Error::HypothesisViolated { .. }
        ));
        let single = RankTable::singleton(8, 8).unwrap();
        assert_eq!(compression_collapse(&single, 0, 0).unwrap(), CollapseTag::Deletion);
    }

    #[test]
    fn confinement_examples() {
        let t = RankTable::doubleton(8, 2, 7, 8).unwrap();
        let d = corner_decompose(&t, 2).unwrap();
        assert!(corner_confinement(&t, &d));
        assert_eq!(d.region().anchor, CountVector(vec![0, 6]));
        let whole = corner_decompose_exhaustive(&t, 8).unwrap();
        assert!(whole.iter().all(|d| corner_confinement(&t, d)));
    }

    #[test]
    fn canonical_tau_rows() {
        let d = doubleton_canonical_tau(1, 2, 3, 3, 8).unwrap();
        assert_eq!(d.coloops(), Subset::EMPTY);
        let d = doubleton_canonical_tau(8, 8, 14, 3, 8).unwrap();
        assert_eq!(d.tau.ranks(), &[0, 2, 2, 2]);
        let d = doubleton_canonical_tau(1, 7, 8, 3, 8).unwrap();
        assert_eq!(d.tau.ranks(), &[0, 1, 1, 2]);
        assert_eq!(d.coloops(), Subset(2));
        assert!(matches!(
            doubleton_canonical_tau(6, 6, 6, 3, 8).unwrap_err(),
            Error::NotInTable { .. }
        ));
    }
}
