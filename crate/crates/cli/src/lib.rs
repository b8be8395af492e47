//! The `pmkit` command line.
//!
//! Exit codes: 0 on success, 1 when the input is rejected or a check fails
//! (with a JSON error object on stderr), 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pmkit_core::catalog::{Catalog, CatalogMetadata};
use pmkit_core::compression::compress_label;
use pmkit_core::decomposition::{
    collapse_table, corner_decompose, corner_decompose_exhaustive, essential_bound,
    CornerDecomposition,
};
use pmkit_core::natural::{multiset_rank, natural_rank, partition_map};
use pmkit_core::polytope::{base_vertices, lattice_points, points_csv, to_svg};
use pmkit_core::search::{search_excluded, SearchOptions};
use pmkit_core::uniform::{class_witness, is_excluded_minor, ClassSpec};
use pmkit_core::verify::{run_suite, Suite};
use pmkit_core::{json as pjson, CloneElement, CountVector, Error, Limits, MultisetRankGrid, RankTable};

#[derive(Parser, Debug)]
#[command(name = "pmkit", version, about = "Integer polymatroids, natural matroids and excluded minors")]
struct Cli {
    /// Print errors as plain text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[arg(long)]
    a: i64,
    #[arg(long)]
    b: i64,
    /// Defaults to the polymatroid's own k.
    #[arg(long)]
    k: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the polymatroid axioms.
    Validate { file: PathBuf },
    /// Contract and delete labelled elements.
    Minor {
        file: PathBuf,
        /// Comma-separated labels.
        #[arg(long, default_value = "")]
        contract: String,
        #[arg(long, default_value = "")]
        delete: String,
    },
    /// l-compression by one element.
    Compress {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        level: i64,
    },
    /// The k-dual.
    Dual { file: PathBuf },
    /// Rank in the k-natural matroid.
    #[command(group(clap::ArgGroup::new("query").required(true).args(["counts", "clones", "grid"])))]
    NaturalRank {
        file: PathBuf,
        /// Per-element clone counts, e.g. `1,3`.
        #[arg(long)]
        counts: Option<String>,
        /// Clone names, e.g. `e2,f1,f3`.
        #[arg(long)]
        clones: Option<String>,
        /// Dump the whole multiset rank grid as CSV.
        #[arg(long)]
        grid: bool,
    },
    /// n-corner decomposition.
    Decompose {
        file: PathBuf,
        #[arg(long, conflicts_with = "canonical")]
        n: Option<i64>,
        /// The decomposition at the essential bound (default).
        #[arg(long)]
        canonical: bool,
    },
    /// Which minor each compression in `[m, k−m]` equals.
    CollapseCheck { file: PathBuf },
    /// Membership in the class forbidding `U_{a,b}` and `U_{b−a,b}`.
    ClassCheck {
        file: PathBuf,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Whether the polymatroid is an excluded minor of the class.
    ExcludedCheck {
        file: PathBuf,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Search for excluded minors and write a catalog.
    Enumerate {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 3)]
        max_elements: usize,
        /// Node budget (default from PMKIT_BUDGET or 10^7).
        #[arg(long)]
        budget: Option<u64>,
        /// Permit more than three elements.
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice points or vertices of the polytopes.
    #[command(group(clap::ArgGroup::new("what").required(true).args(["lattice", "vertices"])))]
    Polytope {
        file: PathBuf,
        #[arg(long)]
        lattice: bool,
        #[arg(long)]
        vertices: bool,
        /// Base polytope instead of the independence polytope.
        #[arg(long)]
        base: bool,
        /// Also draw a two-element polytope.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Run a self-check suite: paper, properties or all.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
    /// Ran fine but the answer is a rejection; the report is already printed.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult = Result<(), Failure>;

fn io_err(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| io_err(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io_err(path, e))
    }
}

fn load(path: &Path, limits: &Limits) -> Result<RankTable, Failure> {
    let table = pjson::from_str(&read_input(path)?)?;
    limits.check(table.len(), table.k())?;
    Ok(table)
}

fn print_json(out: &mut dyn Write, v: &Value) -> CliResult {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))
        .map_err(|e| Failure::Io(e.to_string()))
}

fn print_text(out: &mut dyn Write, s: &str) -> CliResult {
    out.write_all(s.as_bytes())
        .map_err(|e| Failure::Io(e.to_string()))
}

fn labels(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn class_for(table: &RankTable, c: &ClassArgs) -> Result<ClassSpec, Failure> {
    let class = ClassSpec::new(c.a, c.b, c.k.unwrap_or(table.k()))?;
    class.check_k(table)?;
    Ok(class)
}

fn decomposition_json(d: &CornerDecomposition) -> Value {
    let g = d.tau.ground();
    json!({
        "format": pjson::FORMAT_VERSION,
        "n": d.n,
        "k": d.k,
        "tau": pjson::to_value(&d.tau),
        "coloops": g.subset_labels(d.coloops()),
    })
}

fn execute(cmd: Command, limits: &Limits, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Validate { file } => {
            let t = load(&file, limits)?;
            print_json(out, &json!({"valid": true, "elements": t.len(), "k": t.k()}))
        }
        Command::Minor {
            file,
            contract,
            delete,
        } => {
            let t = load(&file, limits)?;
            let g = t.ground();
            let m = t.minor(g.subset_of(&labels(&contract))?, g.subset_of(&labels(&delete))?)?;
            print_json(out, &pjson::to_value(&m))
        }
        Command::Compress {
            file,
            element,
            level,
        } => {
            let t = load(&file, limits)?;
            print_json(out, &pjson::to_value(&compress_label(&t, &element, level)?))
        }
        Command::Dual { file } => {
            let t = load(&file, limits)?;
            print_json(out, &pjson::to_value(&t.k_dual()?))
        }
        Command::NaturalRank {
            file,
            counts,
            clones,
            grid,
        } => {
            let t = load(&file, limits)?;
            if grid {
                return print_text(out, &MultisetRankGrid::eager(&t).to_csv());
            }
            let (a, rank) = match (counts, clones) {
                (Some(c), _) => {
                    let a = c
                        .split(',')
                        .map(|x| x.trim().parse::<i64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| Error::InvalidParams(format!("bad counts {c:?}")))?;
                    let a = CountVector(a);
                    let r = multiset_rank(&t, &a)?;
                    (a, r)
                }
                (None, Some(c)) => {
                    let xs = labels(&c)
                        .into_iter()
                        .map(|x| CloneElement::parse(x, t.ground()))
                        .collect::<Result<Vec<_>, _>>()?;
                    (partition_map(t.ground(), &xs, t.k())?, natural_rank(&t, &xs)?)
                }
                (None, None) => unreachable!("clap requires one query"),
            };
            print_json(out, &json!({"counts": a.0, "rank": rank}))
        }
        Command::Decompose { file, n, .. } => {
            let t = load(&file, limits)?;
            let d = match n {
                None => essential_bound(&t).1,
                Some(n) if 2 * n < t.k() || n < 0 => corner_decompose(&t, n)?,
                Some(n) => corner_decompose_exhaustive(&t, n)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::NotDecomposable {
                        n,
                        reason: "no coloop set gives a valid tau".into(),
                    })?,
            };
            print_json(out, &decomposition_json(&d))
        }
        Command::CollapseCheck { file } => {
            let t = load(&file, limits)?;
            let mut csv = String::from("element,l,tag\n");
            for (e, l, tag) in collapse_table(&t)? {
                csv.push_str(&format!("{e},{l},{tag:?}\n"));
            }
            print_text(out, &csv)
        }
        Command::ClassCheck { file, class } => {
            let t = load(&file, limits)?;
            let class = class_for(&t, &class)?;
            let w = class_witness(&MultisetRankGrid::new(&t), &class);
            print_json(out, &json!({"in_class": w.is_none(), "witness": w}))?;
            match w {
                None => Ok(()),
                Some(_) => Err(Failure::Check),
            }
        }
        Command::ExcludedCheck { file, class } => {
            let t = load(&file, limits)?;
            let class = class_for(&t, &class)?;
            let excluded = is_excluded_minor(&t, &class)?;
            print_json(out, &json!({"excluded_minor": excluded}))?;
            if excluded {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Enumerate {
            a,
            b,
            k,
            max_elements,
            budget,
            allow_large,
            out: path,
        } => {
            limits.check(max_elements, k)?;
            let class = ClassSpec::new(a, b, k)?;
            let opts = SearchOptions {
                max_elements,
                node_budget: budget.unwrap_or(limits.node_budget),
                allow_large,
                parallel: true,
            };
            let outcome = search_excluded(&class, &opts)?;
            let catalog = Catalog::from_search(
                class,
                CatalogMetadata::new(max_elements, opts.node_budget),
                outcome,
            );
            let text = catalog.to_string_pretty();
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| io_err(&p, e)),
                None => print_text(out, &text),
            }
        }
        Command::Polytope {
            file,
            lattice,
            base,
            svg,
            ..
        } => {
            let t = load(&file, limits)?;
            if let Some(p) = svg {
                fs::write(&p, to_svg(&t)?).map_err(|e| io_err(&p, e))?;
            }
            let points = if lattice {
                lattice_points(&t, base)
            } else {
                base_vertices(&t)
            };
            print_text(out, &points_csv(&t, &points))
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite);
            print_json(out, &serde_json::to_value(&report).expect("report serializes"))?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn report_failure(f: &Failure, human: bool) {
    let (kind, message) = match f {
        Failure::Domain(e) => (e.kind(), e.to_string()),
        Failure::Io(m) => ("Io", m.clone()),
        Failure::Check => return,
    };
    if human {
        eprintln!("error: {message}");
    } else {
        eprintln!("{}", json!({"error": kind, "message": message}));
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(jobs) = cli.jobs {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let result = Limits::from_env()
        .map_err(Failure::from)
        .and_then(|limits| execute(cli.command, &limits, &mut io::stdout().lock()));
    match result {
        Ok(()) => 0,
        Err(f) => {
            report_failure(&f, cli.human);
            1
        }
    }
}
