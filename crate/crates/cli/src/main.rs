//! `ccm`: analysis, classification, generation and group extraction for
//! commutative cancellative medial magmas. Reports are JSON on standard
//! output; a short summary goes to standard error.

mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{Failure, Outcome};
use report::{Report, Status};

#[derive(Parser)]
#[command(name = "ccm", version, about = "Commutative cancellative medial magmas")]
struct Cli {
    /// Print the report as a single compact JSON line.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    /// Seed for `generate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Grid steps per family for `catalog` (one more point than steps, plus the unit).
    #[arg(long, global = true, default_value_t = 16)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check M1–M3, associativity and idempotents of a Cayley table file.
    Check { path: PathBuf },
    /// Flags and label at an idempotent unit.
    Classify {
        path: PathBuf,
        #[arg(long)]
        unit: usize,
    },
    /// Write a random commutative medial quasigroup and its Toyoda parameters.
    Generate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Abelian group with `k ⊕ e = i ⊕ j` and its invariant factors.
    ExtractGroup {
        path: PathBuf,
        #[arg(long)]
        unit: usize,
        /// Also write the group table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Properties of the relation `a R b ⟺ ∃x∈X, a ⊕ e = x ⊕ b`.
    Relation {
        path: PathBuf,
        /// Comma-separated elements of X, which must be closed.
        #[arg(long)]
        subalgebra: String,
        #[arg(long)]
        unit: usize,
    },
    /// Sampled checks and classification for a parametric family; lists the
    /// families when no id is given.
    Catalog {
        #[arg(long)]
        family: Option<String>,
    },
}

fn args_echo(cli: &Cli) -> (&'static str, Value) {
    match &cli.command {
        Command::Check { path } => ("check", json!({ "path": path })),
        Command::Classify { path, unit } => ("classify", json!({ "path": path, "unit": unit })),
        Command::Generate { order, out } => (
            "generate",
            json!({ "order": order, "seed": cli.seed, "out": out }),
        ),
        Command::ExtractGroup { path, unit, out } => (
            "extract-group",
            json!({ "path": path, "unit": unit, "out": out }),
        ),
        Command::Relation { path, subalgebra, unit } => (
            "relation",
            json!({ "path": path, "subalgebra": subalgebra, "unit": unit }),
        ),
        Command::Catalog { family } => ("catalog", json!({ "family": family, "samples": cli.samples })),
    }
}

fn run(cli: &Cli, report: &mut Report) -> Outcome {
    match &cli.command {
        Command::Check { path } => commands::check(report, path),
        Command::Classify { path, unit } => commands::classify_cmd(report, path, *unit),
        Command::Generate { order, out } => commands::generate(report, *order, cli.seed, out),
        Command::ExtractGroup { path, unit, out } => commands::extract(report, path, *unit, out.as_deref()),
        Command::Relation { path, subalgebra, unit } => {
            let subset = commands::parse_subset(subalgebra)?;
            commands::relation(report, path, &subset, *unit)
        }
        Command::Catalog { family: None } => commands::catalog_list(report),
        Command::Catalog { family: Some(id) } => commands::catalog_family(report, id, cli.samples),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = args_echo(&cli);
    let mut report = Report::new(name, args);
    let outcome = run(&cli, &mut report);
    if !cli.quiet {
        for line in report.summary() {
            eprintln!("{line}");
        }
        for w in report.warnings() {
            eprintln!("warning: {w}");
        }
    }
    let (status, json) = match outcome {
        Ok(status) => (status, report.finish(status, None)),
        Err(Failure { code, message, details }) => {
            if !cli.quiet {
                eprintln!("error ({code}): {message}");
            }
            (Status::Error, report.finish(Status::Error, Some((code, message, details))))
        }
    };
    let text = if cli.json {
        serde_json::to_string(&json)
    } else {
        serde_json::to_string_pretty(&json)
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(io::stdout().lock(), "{}", text.expect("reports serialize"));
    ExitCode::from(status.code() as u8)
}
