//! Thin command-line front end. All the mathematics lives in the
//! library; see the examples/ directory for the richer API surface.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 bad usage
//! or an unusable `--system` string.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kantor::realize::{
    build_fts_algebra, build_jts_algebra, build_kts_algebra_with, dimension_table,
    oracle_iso_via_involution, oracle_iso_via_t, BuildOptions, IsoReport, RealizedAlgebra,
    SystemKind, TableEntry, MAX_EXHAUSTIVE_DIM,
};
use kantor::report::{
    render_algebra_markdown, render_axioms_markdown, render_dimension_table_markdown,
    AxiomReport, GradedAlgebraReport,
};
use kantor::sysspec::{parse_system, Oracle, ParsedSystem};
use kantor::triple::CheckMode;

#[derive(Parser)]
#[command(
    name = "kantor",
    about = "Graded Lie algebras from triple systems, verified in exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the triple-system axioms of a system
    Axioms(AxiomsArgs),
    /// Build the graded operator algebra and verify it
    Build(BuildArgs),
    /// Dimension table for the tensor-algebra series
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Jts,
    Kts,
    Fts,
}

#[derive(Args)]
struct CommonArgs {
    /// tensor:<K>[:split], sl:<n>:roots=<i,j,…>, or fts:sl3
    #[arg(long)]
    system: String,
    /// check every basis tuple instead of sampling
    #[arg(long)]
    exhaustive: bool,
    /// sampled tuples per identity
    #[arg(long)]
    samples: Option<u64>,
    /// seed for sampled mode (runs are reproducible)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// worker threads (default: the KANTOR_THREADS variable, else 1).
    /// Verification is exact and elimination-bound, so this is a cap,
    /// not a promise.
    #[arg(long)]
    threads: Option<usize>,
}

impl CommonArgs {
    fn mode(&self, default_samples: u64) -> CheckMode {
        if self.exhaustive {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled {
                seed: self.seed,
                count: self.samples.unwrap_or(default_samples),
            }
        }
    }

    fn threads(&self) -> usize {
        self.threads
            .or_else(|| {
                std::env::var("KANTOR_THREADS")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(1)
            .max(1)
    }
}

#[derive(Args)]
struct AxiomsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// which axiom suite to run (default: the system's natural one)
    #[arg(long, value_enum)]
    check: Option<Suite>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// evaluation-based verification and staged rank certification for
    /// systems past the symbolic size limit
    #[arg(long, conflicts_with = "exhaustive")]
    large: bool,
    /// also check the isomorphism with the matrix-algebra oracle
    /// (system must come from a graded matrix algebra)
    #[arg(long)]
    oracle_check: bool,
}

#[derive(Args)]
struct TableArgs {
    /// include the two large rows (long-running)
    #[arg(long)]
    large: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// worker threads (see `build --help`)
    #[arg(long)]
    threads: Option<usize>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization")
}

fn cmd_axioms(args: &AxiomsArgs) -> Result<bool, String> {
    let parsed = parse_system(&args.common.system).map_err(|e| e.to_string())?;
    let _ = args.common.threads();
    let mode = args.common.mode(2000);
    let suite = args.check.unwrap_or(match parsed.default_kind {
        SystemKind::Jordan => Suite::Jts,
        SystemKind::Kantor => Suite::Kts,
        SystemKind::Freudenthal => Suite::Fts,
    });
    let ts = &parsed.ts;
    let (name, checks) = match suite {
        Suite::Jts => ("jts", ts.check_jts(mode)),
        Suite::Kts => ("kts", ts.check_kts(mode)),
        Suite::Fts => ("fts", ts.check_fts(mode).map_err(|e| e.to_string())?),
    };
    let seed = match mode {
        CheckMode::Sampled { seed, .. } => Some(seed),
        CheckMode::Exhaustive => None,
    };
    let report = AxiomReport::new(ts.label(), name, ts.dim(), mode.label(), seed, checks);
    let text = match args.common.format {
        Format::Json => to_json(&report),
        Format::Markdown => render_axioms_markdown(&report),
    };
    emit(&args.common.out, &text)?;
    Ok(report.pass)
}

#[derive(serde::Serialize)]
struct BuildOutput {
    #[serde(flatten)]
    report: GradedAlgebraReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<IsoReport>,
}

fn build_parsed(parsed: &ParsedSystem, large: bool) -> Result<RealizedAlgebra, String> {
    match parsed.default_kind {
        SystemKind::Jordan => build_jts_algebra(&parsed.ts),
        SystemKind::Kantor => build_kts_algebra_with(
            &parsed.ts,
            BuildOptions { axiom_mode: None, large },
        ),
        SystemKind::Freudenthal => build_fts_algebra(&parsed.ts),
    }
    .map_err(|e| e.to_string())
}

fn cmd_build(args: &BuildArgs) -> Result<bool, String> {
    let parsed = parse_system(&args.common.system).map_err(|e| e.to_string())?;
    let _ = args.common.threads();
    let r = build_parsed(&parsed, args.large)?;
    let mode = if args.common.exhaustive {
        if r.system().dim() > MAX_EXHAUSTIVE_DIM {
            return Err(format!(
                "--exhaustive stops at dimension {MAX_EXHAUSTIVE_DIM}; use --samples"
            ));
        }
        CheckMode::Exhaustive
    } else {
        args.common.mode(500)
    };
    let report = r
        .full_report(&parsed.spec, mode, parsed.expected_total)
        .map_err(|e| e.to_string())?;
    let oracle = if args.oracle_check {
        let iso = match &parsed.oracle {
            Some(Oracle::Involution { g, tau }) => {
                oracle_iso_via_involution(g, tau, &r).map_err(|e| e.to_string())?
            }
            Some(Oracle::TElement { g, t }) => {
                oracle_iso_via_t(g, t, &r).map_err(|e| e.to_string())?
            }
            None => {
                return Err("oracle check needs a system derived from a matrix algebra".into())
            }
        };
        Some(iso)
    } else {
        None
    };
    let pass = report.pass && oracle.as_ref().map_or(true, |o| o.pass);
    let output = BuildOutput { report, oracle };
    let text = match args.common.format {
        Format::Json => to_json(&output),
        Format::Markdown => {
            let mut t = render_algebra_markdown(&output.report);
            if let Some(o) = &output.oracle {
                t.push_str(&format!(
                    "\noracle: well-defined {}, bijective {}, homomorphism {} ({} pairs)\n",
                    o.well_defined, o.bijective, o.homomorphism, o.generator_pairs_checked
                ));
            }
            t
        }
    };
    emit(&args.common.out, &text)?;
    Ok(pass)
}

fn cmd_table(args: &TableArgs) -> Result<bool, String> {
    let mut specs = vec!["tensor:R", "tensor:C"];
    if args.large {
        specs.push("tensor:H");
        specs.push("tensor:O");
    }
    let mut entries = Vec::new();
    for spec in specs {
        let parsed = parse_system(spec).map_err(|e| e.to_string())?;
        entries.push(TableEntry {
            system: spec.into(),
            algebra: parsed.algebra.clone().unwrap_or_default(),
            expected_total: parsed.expected_total.unwrap_or(0),
            ts: parsed.ts,
        });
    }
    let table = dimension_table(&entries);
    let text = match args.format {
        Format::Json => to_json(&table),
        Format::Markdown => render_dimension_table_markdown(&table),
    };
    emit(&args.out, &text)?;
    Ok(table.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Axioms(a) => cmd_axioms(a),
        Command::Build(a) => cmd_build(a),
        Command::Table(a) => cmd_table(a),
    };
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
