//! Self-check suites.
//!
//! `paper` replays the acceptance criteria, `properties` samples seeded
//! random tables against structural invariants, `all` runs both. Every
//! criterion reports how many cases it checked and the first few failures.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::compression::compress;
use crate::decomposition::{
    collapse_table, corner_decompose, corner_decompose_exhaustive, decompose_via_minors,
    doubleton_canonical_tau,
};
use crate::error::{Error, Result};
use crate::json;
use crate::natural::{multiset_rank_oracle, ExplicitNatural, MultisetRankGrid, EXPLICIT_LIMIT};
use crate::poly::{permutations, RankTable};
use crate::polytope::{
    base_vertices, in_base_polytope, lattice_points, minor_face, RationalPoint,
};
use crate::search::{all_tables, random_table, search_excluded, SearchOptions};
use crate::subset::{all_subsets, Subset};
use crate::uniform::{
    count_formula, detect_doubleton_status, doubleton_rows, doubleton_triples,
    dual_closure_check, enumerate_doubleton_excluded, enumerate_singleton_excluded,
    gamma_size_check, in_class, is_excluded_minor, simplification_check, ClassSpec,
    DoubletonStatus, ExcludedMinorRecord,
};

/// Seed for every random sample drawn by the suites.
pub const SEED: u64 = 0x9e37_79b9;

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Paper,
    Properties,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Suite::Paper),
            "properties" => Ok(Suite::Properties),
            "all" => Ok(Suite::All),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Paper => "paper",
            Suite::Properties => "properties",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub elapsed_ms: f64,
    pub limit_ms: Option<u64>,
    pub witnesses: Vec<String>,
}

impl CriterionReport {
    /// `PASS 3 compression ...` style summary line.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {} {} ({} checked, {} failed, {:.1} ms",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checked,
            self.failures,
            self.elapsed_ms
        );
        if let Some(limit) = self.limit_ms {
            s.push_str(&format!(", limit {limit} ms"));
        }
        s.push(')');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

#[derive(Default)]
pub(crate) struct Tally {
    checked: usize,
    failures: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn fail(&mut self, witness: String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    /// Runs `f` over `items` in parallel; `Some` is a failure witness.
    fn sweep<T: Sync>(
        &mut self,
        items: &[T],
        f: impl Fn(&T) -> Result<Option<String>> + Sync,
    ) {
        let results: Vec<Result<Option<String>>> = items.par_iter().map(&f).collect();
        for r in results {
            self.checked += 1;
            match r {
                Ok(None) => {}
                Ok(Some(w)) => self.fail(w),
                Err(e) => self.fail(format!("error: {e}")),
            }
        }
    }
}

fn run(
    id: &str,
    title: &str,
    limit: Option<Duration>,
    f: impl FnOnce(&mut Tally) -> Result<()>,
) -> CriterionReport {
    let mut t = Tally::default();
    let start = Instant::now();
    let outcome = f(&mut t);
    let elapsed = start.elapsed();
    if let Err(e) = outcome {
        t.fail(format!("error: {e}"));
    }
    let in_time = limit.is_none_or(|l| elapsed <= l);
    if !in_time {
        t.witnesses.push(format!("took {elapsed:?}"));
    }
    CriterionReport {
        id: id.to_string(),
        title: title.to_string(),
        passed: t.failures == 0 && t.checked > 0 && in_time,
        checked: t.checked,
        failures: t.failures,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
        limit_ms: limit.map(|l| l.as_millis() as u64),
        witnesses: t.witnesses,
    }
}

fn show(t: &RankTable) -> String {
    json::to_string(t)
}

fn doubleton(k: i64, (e, f, m): (i64, i64, i64)) -> Result<RankTable> {
    RankTable::doubleton(k, e, f, m)
}

/// Every table on at most `max_n` elements for each bound in `ks`.
fn tables_upto(max_n: usize, ks: impl IntoIterator<Item = i64>) -> Vec<RankTable> {
    let ks: Vec<i64> = ks.into_iter().collect();
    (1..=max_n)
        .flat_map(|n| ks.iter().flat_map(move |&k| all_tables(n, k)))
        .collect()
}

fn random_tables(rng: &mut ChaCha8Rng, count: usize, max_n: usize, max_k: i64) -> Vec<RankTable> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let k = rng.gen_range(1..=max_k);
            random_table(n, k, rng)
        })
        .collect()
}

pub fn example_table() -> RankTable {
    RankTable::doubleton(3, 3, 2, 4).expect("valid example")
}

/// `R(a_e, a_f)` for the example, rows `a_e`, columns `a_f`, read off the
/// pentagon `x <= 3, y <= 2, x + y <= 4`.
pub const EXAMPLE_GRID: [[i64; 4]; 4] = [[0, 1, 2, 2], [1, 2, 3, 3], [2, 3, 4, 4], [3, 4, 4, 4]];

/// The 40 excluded doubletons listed for (3,7,8), as `(ρe, ρf, m)`.
pub fn listed_doubletons_378() -> Vec<(i64, i64, i64)> {
    let mut out = vec![(1, 6, 6), (2, 6, 6), (2, 6, 7), (2, 7, 7)];
    out.extend((6..=11).map(|m| (6, 6, m)));
    for m in 7..=12 {
        out.extend([(6, 7, m), (7, 7, m)]);
    }
    for m in 8..=13 {
        out.extend([(6, 8, m), (7, 8, m), (8, 8, m)]);
    }
    out
}

pub fn criterion_1() -> CriterionReport {
    run("1", "multiset rank grid of the example", Some(Duration::from_millis(1)), |t| {
        let grid = MultisetRankGrid::eager(&example_table());
        for (ae, row) in EXAMPLE_GRID.iter().enumerate() {
            for (af, &want) in row.iter().enumerate() {
                let got = grid.value(&[ae as i64, af as i64]);
                t.check(got == want, || format!("R({ae},{af}) = {got}, want {want}"));
            }
        }
        Ok(())
    })
}

pub fn criterion_2() -> CriterionReport {
    run("2", "min formula = lattice maximum = natural matroid rank", Some(Duration::from_secs(30)), |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let tables = random_tables(&mut rng, 200, 3, 4);
        t.sweep(&tables, |table| {
            let grid = MultisetRankGrid::eager(table);
            for (a, r) in grid.entries() {
                let oracle = multiset_rank_oracle(table, &a)?;
                if oracle != r {
                    return Ok(Some(format!("{} at {:?}: min {r}, lattice {oracle}", show(table), a.0)));
                }
            }
            if table.k() as usize * table.len() <= EXPLICIT_LIMIT.min(14) {
                let nat = ExplicitNatural::new(table)?;
                for x in 0..1u32 << nat.element_count() {
                    let c = nat.counts(x);
                    if nat.rank(x) != grid.value(&c.0) {
                        return Ok(Some(format!("{} clone set {x:#b}", show(table))));
                    }
                }
            }
            Ok(None)
        });
        Ok(())
    })
}

pub fn criterion_3() -> CriterionReport {
    run("3", "compression levels and boundary identities", None, |t| {
        let c = compress(&example_table(), 0, 2)?;
        t.check(c.ranks() == [0, 2], || format!("compression at 2 gives {}", show(&c)));
        let tables = tables_upto(3, 0..=4);
        t.sweep(&tables, |table| {
            let grid = MultisetRankGrid::new(table);
            for e in 0..table.len() {
                let x = Subset::singleton(e);
                let low = crate::compression::compress_with_grid(&grid, e, 0)?;
                let high = crate::compression::compress_with_grid(&grid, e, table.element_rank(e))?;
                if low != table.delete(x)? || high != table.contract(x)? {
                    return Ok(Some(format!("{} at element {e}", show(table))));
                }
            }
            Ok(None)
        });
        Ok(())
    })
}

fn doubleton_dual_sweep(t: &mut Tally, class: &ClassSpec) {
    let triples: Vec<_> = doubleton_triples(class.k).collect();
    t.sweep(&triples, |&tr| {
        let d = doubleton(class.k, tr)?;
        let dual = d.k_dual()?;
        Ok((in_class(&d, class)? != in_class(&dual, class)?).then(|| format!("{tr:?} for {class:?}")))
    });
}

pub fn criterion_4() -> CriterionReport {
    run("4", "k-duality", None, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
        let tables = random_tables(&mut rng, 200, 3, 4);
        t.sweep(&tables, |table| {
            let dual = table.k_dual()?;
            if dual.k_dual()? != *table {
                return Ok(Some(format!("involution fails on {}", show(table))));
            }
            let (g, gd) = (MultisetRankGrid::new(table), MultisetRankGrid::new(&dual));
            let k = table.k();
            let top = g.value(&vec![k; table.len()]);
            for (a, rd) in gd.entries() {
                let comp: Vec<i64> = a.0.iter().map(|x| k - x).collect();
                if rd != a.total() - top + g.value(&comp) {
                    return Ok(Some(format!("grid identity fails on {} at {:?}", show(table), a.0)));
                }
            }
            Ok(None)
        });
        for class in [ClassSpec::new(2, 4, 4)?, ClassSpec::new(3, 7, 8)?] {
            doubleton_dual_sweep(t, &class);
        }
        Ok(())
    })
}

pub fn criterion_5() -> CriterionReport {
    run("5", "singleton excluded minors", Some(Duration::from_secs(10)), |t| {
        let found: Vec<i64> = enumerate_singleton_excluded(&ClassSpec::new(3, 7, 8)?)?
            .iter()
            .map(|r| r.polymatroid.total_rank())
            .collect();
        t.check(found == [3, 4, 5], || format!("(3,7,8) gives {found:?}"));
        for (a, b, k) in [(2, 4, 4), (2, 5, 6), (3, 7, 8)] {
            let class = ClassSpec::new(a, b, k)?;
            let records = enumerate_singleton_excluded(&class)?;
            t.check(records.len() as i64 == k - 2 * a + 1, || {
                format!("{class:?}: {} singletons", records.len())
            });
            for r in &records {
                let ok = is_excluded_minor(&r.polymatroid, &class)?;
                t.check(ok, || format!("{} for {class:?}", show(&r.polymatroid)));
            }
        }
        Ok(())
    })
}

fn forms(records: &[ExcludedMinorRecord]) -> BTreeSet<Vec<i64>> {
    records.iter().map(|r| r.canonical_form.clone()).collect()
}

pub fn criterion_6a() -> CriterionReport {
    run("6a", "the 40 listed (3,7,8) excluded doubletons", Some(Duration::from_secs(60)), |t| {
        let class = ClassSpec::new(3, 7, 8)?;
        let found = forms(&enumerate_doubleton_excluded(&class)?);
        let listed = listed_doubletons_378()
            .into_iter()
            .map(|tr| Ok((tr, doubleton(8, tr)?.canonical_form())))
            .collect::<Result<Vec<_>>>()?;
        for (tr, form) in &listed {
            t.check(found.contains(form), || format!("listed {tr:?} not detected as excluded"));
        }
        let listed_forms: BTreeSet<_> = listed.into_iter().map(|(_, f)| f).collect();
        for f in found.difference(&listed_forms) {
            t.fail(format!("detected {f:?} is not listed"));
        }
        t.check(found.len() == 40, || format!("{} detected", found.len()));
        Ok(())
    })
}

/// Classes paired with the `(a, k)` of each count check.
pub const COUNT_CLASSES: [(i64, i64, i64); 4] = [(1, 2, 2), (2, 4, 4), (2, 4, 6), (3, 7, 8)];

pub fn criterion_6b() -> CriterionReport {
    run("6b", "doubleton count formula", Some(Duration::from_secs(60)), |t| {
        for (a, b, k) in COUNT_CLASSES {
            let class = ClassSpec::new(a, b, k)?;
            let found = enumerate_doubleton_excluded(&class)?.len() as i64;
            let formula = count_formula(a, k)?;
            t.check(found == formula, || {
                format!("(a,k) = ({a},{k}): formula {formula}, detected {found}")
            });
        }
        Ok(())
    })
}

fn row_expectation(row: u8) -> DoubletonStatus {
    match row {
        1 | 2 | 4 => DoubletonStatus::InClass,
        3 | 5 => DoubletonStatus::Excluded,
        _ => DoubletonStatus::Neither,
    }
}

pub fn criterion_7() -> CriterionReport {
    run("7", "doubleton table rows by direct detection", None, |t| {
        for class in [ClassSpec::new(2, 4, 4)?, ClassSpec::new(3, 7, 8)?] {
            let triples: Vec<_> = doubleton_triples(class.k).collect();
            let statuses: Vec<Result<DoubletonStatus>> = triples
                .par_iter()
                .map(|&tr| detect_doubleton_status(&doubleton(class.k, tr)?, &class))
                .collect();
            for (&(e, f, m), status) in triples.iter().zip(statuses) {
                let status = status?;
                for row in doubleton_rows(class.a, class.k, e, f, m) {
                    let want = row_expectation(row);
                    t.check(status == want, || {
                        format!("{class:?} ({e},{f},{m}) row {row}: want {want:?}, detected {status:?}")
                    });
                }
            }
        }
        Ok(())
    })
}

pub fn criterion_8() -> CriterionReport {
    run("8", "(2,4,4) search to three elements", Some(Duration::from_secs(300)), |t| {
        let class = ClassSpec::new(2, 4, 4)?;
        let opts = SearchOptions {
            max_elements: 3,
            node_budget: 10_000_000,
            ..SearchOptions::default()
        };
        let out = search_excluded(&class, &opts)?;
        let small = forms(
            &enumerate_singleton_excluded(&class)?
                .into_iter()
                .chain(enumerate_doubleton_excluded(&class)?)
                .collect::<Vec<_>>(),
        );
        for r in &out.records {
            t.check(r.polymatroid.len() <= 2 && small.contains(&r.canonical_form), || {
                format!("unexpected excluded minor {}", show(&r.polymatroid))
            });
        }
        t.check(out.records.len() == small.len(), || {
            format!("{} records, {} classified", out.records.len(), small.len())
        });
        Ok(())
    })
}

pub fn criterion_9i() -> CriterionReport {
    run("9.i", "uniqueness of corner decompositions", None, |t| {
        let mut tables = tables_upto(2, 0..=8);
        tables.extend(tables_upto(3, [4, 7, 8]).into_iter().filter(|t| t.len() == 3));
        t.sweep(&tables, |table| {
            for n in (0..).take_while(|n| 2 * n < table.k()) {
                let all = corner_decompose_exhaustive(table, n)?;
                let unique = corner_decompose(table, n).ok();
                if all.len() > 1 || all.first() != unique.as_ref() {
                    return Ok(Some(format!("{} at n = {n}: {} decompositions", show(table), all.len())));
                }
            }
            Ok(None)
        });
        Ok(())
    })
}

/// `(ρ(e), τ(e), coloop)` per in-class singleton rank.
fn corner_singleton_rows(a: i64, k: i64) -> Vec<(i64, i64, bool)> {
    (0..=k)
        .filter_map(|rho| match rho {
            0 => Some((0, 0, false)),
            r if r <= a - 1 => Some((r, r, false)),
            r if r == k - a + 1 => Some((r, 0, true)),
            r if r >= k - a + 2 => Some((r, r - k + a - 1, true)),
            _ => None,
        })
        .collect()
}

/// `(ρe, ρf, m)`, `τ` ranks and coloop mask of the rank-2 1-corner tables.
fn one_corner_doubletons(k: i64) -> [((i64, i64, i64), [i64; 4], u32); 7] {
    [
        ((k - 1, k - 1, 2 * k - 2), [0, 0, 0, 0], 3),
        ((k, k, 2 * k - 1), [0, 1, 1, 1], 3),
        ((k, k, 2 * k), [0, 1, 1, 2], 3),
        ((1, k - 1, k), [0, 1, 0, 1], 2),
        ((1, k, k), [0, 1, 1, 1], 2),
        ((1, k, k + 1), [0, 1, 1, 2], 2),
        ((k - 1, k, 2 * k - 1), [0, 0, 1, 1], 3),
    ]
}

/// τ as `(τe, τf, τef)` and `ρ` under loops, `{f}` and both as coloops, for
/// the (3,7,8) 2-corner listing.
pub const TWO_CORNER_TABLE: [((i64, i64, i64), [(i64, i64, i64); 3]); 14] = [
    ((0, 0, 0), [(0, 0, 0), (0, 6, 6), (6, 6, 12)]),
    ((0, 1, 1), [(0, 1, 1), (0, 7, 7), (6, 7, 13)]),
    ((0, 2, 2), [(0, 2, 2), (0, 8, 8), (6, 8, 14)]),
    ((1, 0, 1), [(1, 0, 1), (1, 6, 7), (7, 6, 13)]),
    ((1, 1, 2), [(1, 1, 2), (1, 7, 8), (7, 7, 14)]),
    ((1, 2, 3), [(1, 2, 3), (1, 8, 9), (7, 8, 15)]),
    ((2, 0, 2), [(2, 0, 2), (2, 6, 8), (8, 6, 14)]),
    ((2, 1, 3), [(2, 1, 3), (2, 7, 9), (8, 7, 15)]),
    ((2, 2, 4), [(2, 2, 4), (2, 8, 10), (8, 8, 16)]),
    ((1, 1, 1), [(1, 1, 1), (1, 7, 7), (7, 7, 13)]),
    ((1, 2, 2), [(1, 2, 2), (1, 8, 8), (7, 8, 14)]),
    ((2, 1, 2), [(2, 1, 2), (2, 7, 8), (8, 7, 14)]),
    ((2, 2, 3), [(2, 2, 3), (2, 8, 9), (8, 8, 15)]),
    ((2, 2, 2), [(2, 2, 2), (2, 8, 8), (8, 8, 14)]),
];

pub fn criterion_9ii() -> CriterionReport {
    run("9.ii", "corner decomposition tables", None, |t| {
        // rank-2 classes, 1-corners
        for k in 4..=10 {
            for (rho, tau, coloop) in corner_singleton_rows(2, k) {
                let d = corner_decompose(&RankTable::singleton(k, rho)?, 1)?;
                t.check(d.tau.total_rank() == tau && d.coloops().contains(0) == coloop, || {
                    format!("1-corner singleton {rho} at k = {k}")
                });
            }
            for (tr, tau, coloops) in one_corner_doubletons(k) {
                let d = corner_decompose(&doubleton(k, tr)?, 1)?;
                t.check(d.tau.ranks() == tau && d.coloops() == Subset(coloops), || {
                    format!("1-corner doubleton {tr:?} at k = {k}")
                });
            }
        }
        // (a−1)-corners
        for (a, b, k) in [(2, 4, 4), (2, 5, 6), (3, 7, 8)] {
            let n = a - 1;
            for (rho, tau, coloop) in corner_singleton_rows(a, k) {
                let d = corner_decompose(&RankTable::singleton(k, rho)?, n)?;
                t.check(d.tau.total_rank() == tau && d.coloops().contains(0) == coloop, || {
                    format!("({a},{b},{k}) singleton {rho}")
                });
            }
            let high = k - a + 1;
            for (e, f, m) in doubleton_triples(k) {
                let coloops = match (e <= n, f <= n, e >= high, f >= high) {
                    (true, true, _, _) if m <= e + f => 0,
                    (true, _, _, true) if m >= e + high => 2,
                    (_, _, true, true) if m >= f + high => 3,
                    _ => continue,
                };
                let d = corner_decompose(&doubleton(k, (e, f, m))?, n)?;
                let canonical = doubleton_canonical_tau(e, f, m, a, k)?;
                t.check(d.coloops() == Subset(coloops) && d == canonical, || {
                    format!("({a},{b},{k}) doubleton ({e},{f},{m})")
                });
            }
        }
        // the (3,7,8) listing
        for ((te, tf, tef), row) in TWO_CORNER_TABLE {
            for (coloops, tr) in [0u32, 2, 3].into_iter().zip(row) {
                let d = corner_decompose(&doubleton(8, tr)?, 2)?;
                t.check(d.tau.ranks() == [0, te, tf, tef] && d.coloops() == Subset(coloops), || {
                    format!("2-corner listing entry {tr:?}")
                });
            }
        }
        Ok(())
    })
}

pub fn criterion_9iii() -> CriterionReport {
    run("9.iii", "gluing from small minors = direct decomposition", None, |t| {
        let tables = tables_upto(3, [4, 7, 8]);
        t.sweep(&tables, |table| {
            for m in (0..=2).filter(|m| table.k() >= 3 * m + 1) {
                let direct = corner_decompose(table, m).ok();
                let glued = decompose_via_minors(table, m).ok();
                if direct != glued {
                    return Ok(Some(format!(
                        "{} at m = {m}: direct {}, glued {}",
                        show(table),
                        direct.is_some(),
                        glued.is_some()
                    )));
                }
            }
            Ok(None)
        });
        Ok(())
    })
}

pub fn criterion_9iv() -> CriterionReport {
    run("9.iv", "compressions collapse to minors", None, |t| {
        let tables = tables_upto(3, 0..=8);
        t.sweep(&tables, |table| match collapse_table(table) {
            Ok(_) => Ok(None),
            Err(e) => Ok(Some(format!("{}: {e}", show(table)))),
        });
        Ok(())
    })
}

pub fn criterion_9v() -> CriterionReport {
    run("9.v", "(3,7,8) excluded minors have 2-corner decompositions", None, |t| {
        let class = ClassSpec::new(3, 7, 8)?;
        let records: Vec<_> = enumerate_singleton_excluded(&class)?
            .into_iter()
            .chain(enumerate_doubleton_excluded(&class)?)
            .collect();
        for r in &records {
            let ok = corner_decompose(&r.polymatroid, 2).is_ok();
            t.check(ok, || format!("{} has none", r.shape()));
        }
        Ok(())
    })
}

pub fn hexagon() -> RankTable {
    RankTable::from_fn(crate::ground::GroundSet::standard(3), 3, |s| [0, 3, 5, 6][s.len()])
        .expect("valid hexagon")
}

pub fn criterion_10a() -> CriterionReport {
    run("10a", "permutohedron membership", None, |t| {
        let h = hexagon();
        for p in permutations(3) {
            let x: Vec<i64> = p.iter().map(|&i| i as i64 + 1).collect();
            let ok = in_base_polytope(&h, &RationalPoint::from_ints(&x))?;
            t.check(ok, || format!("{x:?} rejected"));
        }
        let far = in_base_polytope(&h, &RationalPoint::from_ints(&[0, 0, 6]))?;
        t.check(!far, || "(0,0,6) accepted".into());
        Ok(())
    })
}

fn disjoint_pairs(n: usize) -> Vec<(Subset, Subset)> {
    all_subsets(n)
        .flat_map(|a1| (Subset::full(n) - a1).subsets().map(move |a2| (a1, a2)))
        .collect()
}

pub fn criterion_10b() -> CriterionReport {
    run("10b", "minor faces are translated minor polytopes", None, |t| {
        let tables = tables_upto(3, 0..=4);
        t.sweep(&tables, |table| {
            for (a1, a2) in disjoint_pairs(table.len()) {
                if !minor_face(table, a1, a2)?.matches_minor(table)? {
                    return Ok(Some(format!("{} contracting {a1:?} deleting {a2:?}", show(table))));
                }
            }
            Ok(None)
        });
        Ok(())
    })
}

pub fn criterion_10c() -> CriterionReport {
    run("10c", "greedy vertices lie in the base polytope", None, |t| {
        let tables = tables_upto(3, 0..=4);
        t.sweep(&tables, |table| {
            for v in base_vertices(table) {
                if !in_base_polytope(table, &RationalPoint::from_ints(&v))? {
                    return Ok(Some(format!("{} vertex {v:?}", show(table))));
                }
            }
            Ok(None)
        });
        Ok(())
    })
}

pub fn criterion_11() -> CriterionReport {
    run("11", "simple, dual-closed, small gamma", None, |t| {
        let c244 = ClassSpec::new(2, 4, 4)?;
        let searched = search_excluded(&c244, &SearchOptions::default())?.records;
        let mut sets = vec![(c244, searched)];
        for (a, b, k) in [(3, 7, 8), (2, 5, 6)] {
            let class = ClassSpec::new(a, b, k)?;
            let records = enumerate_singleton_excluded(&class)?
                .into_iter()
                .chain(enumerate_doubleton_excluded(&class)?)
                .collect();
            sets.push((class, records));
        }
        for (class, records) in &sets {
            t.check(simplification_check(records), || format!("{class:?}: a record is not simple"));
            let closed = dual_closure_check(records, class)?;
            t.check(closed, || format!("{class:?}: records not closed under duality"));
            let small = gamma_size_check(records, class)?;
            t.check(small, || format!("{class:?}: gamma member larger than b"));
        }
        Ok(())
    })
}

pub fn paper_suite() -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6a(),
        criterion_6b(),
        criterion_7(),
        criterion_8(),
        criterion_9i(),
        criterion_9ii(),
        criterion_9iii(),
        criterion_9iv(),
        criterion_9v(),
        criterion_10a(),
        criterion_10b(),
        criterion_10c(),
        criterion_11(),
    ]
}

fn random_sweep(
    id: &str,
    title: &str,
    seed: u64,
    count: usize,
    max_n: usize,
    max_k: i64,
    f: impl Fn(&RankTable, &mut ChaCha8Rng) -> Result<Option<String>> + Sync,
) -> CriterionReport {
    run(id, title, None, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tables = random_tables(&mut rng, count, max_n, max_k);
        let seeded: Vec<(RankTable, u64)> = tables.into_iter().map(|x| (x, rng.gen())).collect();
        t.sweep(&seeded, |(table, s)| f(table, &mut ChaCha8Rng::seed_from_u64(*s)));
        Ok(())
    })
}

pub fn properties_suite() -> Vec<CriterionReport> {
    vec![
        random_sweep("P1", "k-dual is an involution", SEED + 101, 100, 4, 6, |t, _| {
            Ok((t.k_dual()?.k_dual()? != *t).then(|| show(t)))
        }),
        random_sweep("P2", "deletion and contraction commute", SEED + 102, 100, 4, 6, |t, rng| {
            let n = t.len();
            if n < 2 {
                return Ok(None);
            }
            let e = rng.gen_range(0..n);
            let f = (e + rng.gen_range(1..n)) % n;
            let (x, y) = (Subset::singleton(e), Subset::singleton(f));
            let a = t.minor(x, y)?;
            let b = t.delete(y)?.contract(x.compress_to(Subset::full(n) - y))?;
            let c = t.contract(x)?.delete(y.compress_to(Subset::full(n) - x))?;
            Ok((a != b || b != c).then(|| format!("{} with {e}, {f}", show(t))))
        }),
        random_sweep("P3", "JSON round trip", SEED + 103, 100, 4, 6, |t, _| {
            Ok((json::from_str(&json::to_string(t))? != *t).then(|| show(t)))
        }),
        random_sweep("P4", "canonical form is a permutation invariant", SEED + 104, 100, 4, 6, |t, rng| {
            let mut perm: Vec<usize> = (0..t.len()).collect();
            perm.shuffle(rng);
            let p = t.permuted(&perm);
            Ok((p.canonical_form() != t.canonical_form() || t.is_isomorphic(&p).is_none())
                .then(|| format!("{} under {perm:?}", show(t))))
        }),
        random_sweep("P5", "decompositions reconstruct and are unique", SEED + 105, 100, 3, 8, |t, _| {
            for n in 0..=t.k() {
                let all = corner_decompose_exhaustive(t, n)?;
                for d in &all {
                    if d.reconstruct()? != *t {
                        return Ok(Some(format!("{} at n = {n}", show(t))));
                    }
                }
                if 2 * n < t.k() && all.len() > 1 {
                    return Ok(Some(format!("{} has {} at n = {n}", show(t), all.len())));
                }
            }
            Ok(None)
        }),
        random_sweep("P6", "grid slices, unit steps and independence", SEED + 106, 100, 3, 4, |t, _| {
            let g = MultisetRankGrid::eager(t);
            let k = t.k();
            for s in all_subsets(t.len()) {
                if g.corner_value(s) != t.rank(s) {
                    return Ok(Some(format!("{} slice {s:?}", show(t))));
                }
            }
            for (a, r) in g.entries() {
                for e in 0..t.len() {
                    if a.0[e] < k {
                        let mut b = a.0.clone();
                        b[e] += 1;
                        if !(0..=1).contains(&(g.value(&b) - r)) {
                            return Ok(Some(format!("{} step at {:?}", show(t), a.0)));
                        }
                    }
                }
                let independent = crate::polytope::is_independent_integer(t, &a.0);
                if independent != (r == a.total()) {
                    return Ok(Some(format!("{} independence at {:?}", show(t), a.0)));
                }
            }
            let best = lattice_points(t, false).iter().map(|p| p.iter().sum::<i64>()).max();
            Ok((best != Some(t.total_rank())).then(|| format!("{} lattice maximum", show(t))))
        }),
        random_sweep("P7", "class membership is minor-closed", SEED + 107, 100, 3, 4, |t, _| {
            let class = ClassSpec::new(2, 4, 4)?;
            if t.k() != class.k || !in_class(t, &class)? {
                return Ok(None);
            }
            for e in 0..t.len() {
                let x = Subset::singleton(e);
                if !in_class(&t.delete(x)?, &class)? || !in_class(&t.contract(x)?, &class)? {
                    return Ok(Some(format!("{} at {e}", show(t))));
                }
            }
            Ok(None)
        }),
    ]
}

pub fn run_suite(suite: Suite) -> SuiteReport {
    let criteria = match suite {
        Suite::Paper => paper_suite(),
        Suite::Properties => properties_suite(),
        Suite::All => {
            let mut v = paper_suite();
            v.extend(properties_suite());
            v
        }
    };
    SuiteReport {
        suite,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("paper".parse::<Suite>().unwrap(), Suite::Paper);
        assert_eq!(
            "nope".parse::<Suite>().unwrap_err(),
            Error::UnknownSuite("nope".into())
        );
    }

    #[test]
    fn listing_has_forty_distinct_entries() {
        let l = listed_doubletons_378();
        assert_eq!(l.len(), 40);
        assert_eq!(l.iter().collect::<BTreeSet<_>>().len(), 40);
    }

    #[test]
    fn report_lines() {
        let r = criterion_1();
        assert!(r.line().starts_with("PASS 1 "), "{}", r.line());
        let p = &properties_suite()[0];
        assert!(p.passed, "{:?}", p.witnesses);
    }
}
