//! `orchard`: count, construct, bound and search Orchard crossings.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 invariant violation (degenerate placement, failed construction).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orchard_core::bounds::formula_value;
use orchard_core::constructions::{best_known, SmallCase};
use orchard_core::crossings::{edge_crossing_counts, total_crossings};
use orchard_core::io::{self, SvgOptions};
use orchard_core::search::{check_against_bounds, derive_small_case, search_family, Strategy};
use orchard_core::verify::{reproduction_table, Table};
use orchard_core::{Error, Family, FamilySpec};

#[derive(Parser)]
#[command(name = "orchard", version, about = "Orchard crossings of rectilinear graph drawings")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true, env = "ORCHARD_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the crossings of a drawing (JSON, or SVG written by this tool).
    Count {
        file: PathBuf,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write the best known drawing of a family member.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Draw every line through two points (SVG only).
        #[arg(long)]
        show_lines: bool,
    },
    /// Stated value or bounds of a family member.
    Bounds {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        json: bool,
    },
    /// Minimize crossings by search and print the result as JSON.
    Search {
        #[command(flatten)]
        family: FamilyArgs,
        /// convex, anneal or auto.
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Evaluation budget.
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the best drawing to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every stated value and print a pass/fail table.
    Verify {
        /// Annealing runs per searched family; 0 skips the search rows.
        #[arg(long, default_value_t = 20)]
        search_runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate the stored small-case drawings by search.
    DeriveSmall {
        /// Case name (P3, P4, L3, L4, L5, L6-alt); all when omitted.
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Annealing restarts per round.
        #[arg(long, default_value_t = 16)]
        restarts: u64,
        /// Rounds of restarts before giving up.
        #[arg(long, default_value_t = 50)]
        rounds: u64,
        /// Directory to write `<case>.json` into.
        #[arg(long, default_value = "crates/core/data/small_cases")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    x: Option<u32>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Error> {
        let family: Family = self.family.parse()?;
        let spec = FamilySpec::new(family, self.n, self.x)?;
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GeneralPosition(_) | Error::Construction { .. } | Error::NotDoubleCover => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Count { file, json } => {
            let text = fs::read_to_string(&file).map_err(|e| io_failure(&file, e))?;
            let d = io::read_drawing(&text)?;
            let counts = edge_crossing_counts(&d);
            let total: u64 = counts.iter().sum();
            if json {
                let edges: Vec<_> = d
                    .graph()
                    .edges()
                    .iter()
                    .zip(&counts)
                    .map(|(e, c)| serde_json::json!({"edge": [e.0, e.1], "crossings": c}))
                    .collect();
                println!("{}", serde_json::json!({"total": total, "edges": edges}));
            } else {
                println!("total {total}");
                for (e, c) in d.graph().edges().iter().zip(&counts) {
                    println!("edge {} {} {c}", e.0, e.1);
                }
            }
            Ok(0)
        }
        Command::Construct { family, out, format, show_lines } => {
            let spec = family.spec()?;
            let d = best_known(&spec)?;
            let text = match format {
                Format::Json => io::drawing_to_json_pretty(&d),
                Format::Svg => io::drawing_to_svg(&d, SvgOptions { show_lines, ..Default::default() }),
            };
            emit(out.as_deref(), &text)?;
            eprintln!("{spec}: {} crossings", total_crossings(&d));
            Ok(0)
        }
        Command::Bounds { family, json } => {
            let report = formula_value(&family.spec()?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).map_err(Error::from)?);
            } else {
                print!("{report}");
            }
            Ok(0)
        }
        Command::Search { family, mode, budget, seed, out } => {
            let spec = family.spec()?;
            let strategy: Strategy = mode.parse()?;
            let result = search_family(&spec, strategy, budget, seed)?;
            for finding in check_against_bounds(&spec, &result)? {
                let level = if finding.critical { "CRITICAL" } else { "note" };
                eprintln!("{level}: {}", finding.message);
            }
            if let Some(p) = out {
                fs::write(&p, io::drawing_to_json_pretty(&result.best_drawing)).map_err(|e| io_failure(&p, e))?;
            }
            println!("{}", serde_json::to_string_pretty(&result.to_json()).map_err(Error::from)?);
            Ok(0)
        }
        Command::Verify { search_runs, seed, json } => {
            let rows = reproduction_table(search_runs, seed);
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).map_err(Error::from)?);
            } else {
                println!("{}", Table(&rows));
            }
            Ok(if rows.iter().all(|r| r.pass) { 0 } else { 1 })
        }
        Command::DeriveSmall { case, seed, restarts, rounds, out_dir } => {
            let cases: Vec<SmallCase> = match case {
                None => SmallCase::ALL.to_vec(),
                Some(name) => vec![SmallCase::ALL
                    .into_iter()
                    .find(|c| c.name() == name)
                    .ok_or_else(|| Failure { code: 2, message: format!("unknown small case {name:?}") })?],
            };
            let mut code = 0;
            for c in cases {
                let r = derive_small_case(c, seed, restarts, rounds)?;
                let status = if r.best_count == c.target() {
                    "ok"
                } else if r.best_count < c.target() {
                    "below target"
                } else {
                    code = 1;
                    "target not reached"
                };
                println!(
                    "{:<7} target {:>3}  found {:>3}  via {}  seed {}  evaluations {}  {status}",
                    c.name(),
                    c.target(),
                    r.best_count,
                    r.stage,
                    r.seed,
                    r.evaluations
                );
                if r.best_count <= c.target() {
                    let path = out_dir.join(format!("{}.json", c.name()));
                    fs::write(&path, io::drawing_to_json(&r.best_drawing) + "\n").map_err(|e| io_failure(&path, e))?;
                }
            }
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot set up {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
