//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` fail for reasons recorded in the project
//! notes; this target exits nonzero if any other criterion fails or if a
//! known-red one starts passing.

use std::process::ExitCode;
use std::time::Instant;

use pmkit_core::decomposition::corner_decompose;
use pmkit_core::poly::validate;
use pmkit_core::polytope::minor_face;
use pmkit_core::search::all_tables;
use pmkit_core::subset::all_subsets;
use pmkit_core::uniform::{doubleton_triples, in_class};
use pmkit_core::verify::{self, CriterionReport, EXAMPLE_GRID};
use pmkit_core::{ClassSpec, GroundSet, RankTable, Subset};

const KNOWN_RED: [&str; 5] = ["6a", "6b", "7", "9.v", "10b"];

fn report(id: &str, title: &str, f: impl FnOnce() -> Vec<String>) -> CriterionReport {
    let start = Instant::now();
    let failures = f();
    CriterionReport {
        id: id.into(),
        title: title.into(),
        passed: failures.is_empty(),
        checked: 1,
        failures: failures.len(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        limit_ms: None,
        witnesses: failures.into_iter().take(5).collect(),
    }
}

/// Brute force over the pentagon cells: max `x + y` with `x <= a_e`,
/// `y <= a_f`, `x <= 3`, `y <= 2`, `x + y <= 4`.
fn grid_oracle() -> Vec<String> {
    let mut bad = Vec::new();
    for ae in 0..=3 {
        for af in 0..=3 {
            let best = (0..=ae.min(3))
                .flat_map(|x| (0..=af.min(2)).map(move |y| (x, y)))
                .filter(|(x, y)| x + y <= 4)
                .map(|(x, y)| x + y)
                .max()
                .unwrap();
            if EXAMPLE_GRID[ae as usize][af as usize] != best {
                bad.push(format!("frozen R({ae},{af}) disagrees with the pentagon"));
            }
        }
    }
    bad
}

/// Every vector in `[0,k]^3 × [0,2k]^3 × [0,3k]` that validates, counted
/// against the branch-and-bound generator.
fn generator_oracle() -> Vec<String> {
    let k: i64 = 4;
    let mut count = 0;
    let g = GroundSet::standard(3);
    for s in 0..(k + 1).pow(3) * (2 * k + 1).pow(3) * (3 * k + 1) {
        let mut rest = s;
        let mut ranks = vec![0i64; 8];
        for mask in 1..8usize {
            let side = (mask.count_ones() as i64) * k + 1;
            ranks[mask] = rest % side;
            rest /= side;
        }
        if validate(g.clone(), k, ranks).is_ok() {
            count += 1;
        }
    }
    let generated = all_tables(3, k).len();
    if count == generated {
        vec![]
    } else {
        vec![format!("brute force {count}, generator {generated}")]
    }
}

/// Translation equivalence where the contracted set is a single element or
/// separated (`ρ(A1) = Σ ρ(e)`).
fn translation_scope() -> Vec<String> {
    let mut bad = Vec::new();
    for n in 1..=3 {
        for k in 0..=4 {
            for t in all_tables(n, k) {
                for a1 in all_subsets(n) {
                    let separated = t.rank(a1) == a1.elements().map(|e| t.element_rank(e)).sum::<i64>();
                    if a1.len() > 1 && !separated {
                        continue;
                    }
                    for a2 in (Subset::full(n) - a1).subsets() {
                        if !minor_face(&t, a1, a2).unwrap().matches_minor(&t).unwrap() {
                            bad.push(format!("{:?} contracting {a1:?}", t.ranks()));
                        }
                    }
                }
            }
        }
    }
    bad
}

/// In-class polymatroids have (a−1)-corner decompositions: every (3,7,8)
/// member on at most two elements and every (2,4,4) member on three.
fn corner_scope() -> Vec<String> {
    let mut bad = Vec::new();
    let c378 = ClassSpec::new(3, 7, 8).unwrap();
    let mut members: Vec<(RankTable, i64)> = (0..=8)
        .map(|m| RankTable::singleton(8, m).unwrap())
        .chain(doubleton_triples(8).map(|(e, f, m)| RankTable::doubleton(8, e, f, m).unwrap()))
        .filter(|t| in_class(t, &c378).unwrap())
        .map(|t| (t, 2))
        .collect();
    let c244 = ClassSpec::new(2, 4, 4).unwrap();
    members.extend(
        all_tables(3, 4)
            .into_iter()
            .filter(|t| in_class(t, &c244).unwrap())
            .map(|t| (t, 1)),
    );
    for (t, n) in members {
        if corner_decompose(&t, n).is_err() {
            bad.push(format!("{:?} has no {n}-corner decomposition", t.ranks()));
        }
    }
    bad
}

fn main() -> ExitCode {
    let mut results = verify::paper_suite();
    results.push(report("1-oracle", "frozen grid matches the pentagon", grid_oracle));
    results.push(report("8-gen", "generator = brute-force filter (3 elements, k = 4)", generator_oracle));
    results.push(report("9.v-scope", "in-class polymatroids decompose at a−1", corner_scope));
    results.push(report("10b-scope", "translation with separated contract sets", translation_scope));

    let mut unexpected = Vec::new();
    for r in &results {
        println!("{}", r.line());
        for w in &r.witnesses {
            println!("    {w}");
        }
        let red = KNOWN_RED.contains(&r.id.as_str());
        if r.passed == red {
            unexpected.push(r.id.clone());
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: {} criteria, known red: {}", results.len(), KNOWN_RED.join(", "));
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
