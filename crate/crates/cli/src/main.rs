use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use quiver_mukai::invariants::{mukai_verdict_given, HypothesisStatus};
use quiver_mukai::io::{parse_dimension_vector_json, parse_quiver_json, NamedQuiver};
use quiver_mukai::partial_sums::{distinct_grid_values, grid_lower_bound};
use quiver_mukai::sweep::{write_equality_csv, DEFAULT_PAIR_BUDGET};
use quiver_mukai::{
    d_grid, exhaustive_lemma_search, full_report, lemma_verdict, sweep, DimensionVector, LemmaSearchConfig,
    PartialSumInstance, SweepConfig,
};

/// Exit code for a run that found a counterexample or an unexpected case.
const EXIT_FINDING: u8 = 2;

#[derive(Parser)]
#[command(name = "quiver-mukai", version, about = "Fano invariants of quiver moduli and the Mukai inequality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check hypotheses, compute invariants and classify one pair.
    Check(PairArgs),
    /// Compute invariants only; the verdict records whether hypotheses hold.
    Invariants(PairArgs),
    /// Exhaustively test all pairs within bounds.
    Sweep(SweepArgs),
    /// The partial-sum lemma.
    #[command(subcommand)]
    Lemma(LemmaCommand),
}

#[derive(Args)]
struct PairArgs {
    /// Quiver JSON file.
    quiver: PathBuf,
    /// Dimension vector JSON file.
    dimvec: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
    #[arg(long = "max-mult", default_value_t = 5)]
    max_multiplicity: u32,
    #[arg(long = "max-dim", default_value_t = 5)]
    max_dim_entry: i64,
    /// Enumerate every labeling instead of one quiver per isomorphism class.
    #[arg(long)]
    no_dedupe: bool,
    /// Cross-check the coprimality engines on every small enough pair.
    #[arg(long)]
    cross_check: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Maximum number of pairs, estimated before filtering.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    budget: u128,
    /// Where to write the JSON report; stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Optional CSV of equality cases.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LemmaCommand {
    /// Check one instance.
    Check {
        /// Comma-separated positive integers.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<i64>,
    },
    /// Check every instance within bounds.
    Sweep {
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        max_l: usize,
        #[arg(long)]
        max_value: i64,
        /// Visit every ordering instead of non-decreasing sequences only.
        #[arg(long)]
        naive: bool,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_pair(args: &PairArgs) -> Result<(NamedQuiver, DimensionVector)> {
    let quiver = parse_quiver_json(&read(&args.quiver)?).with_context(|| args.quiver.display().to_string())?;
    let d = parse_dimension_vector_json(&read(&args.dimvec)?, &quiver)
        .with_context(|| args.dimvec.display().to_string())?;
    Ok((quiver, d))
}

fn emit(value: &impl serde::Serialize, path: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn check(args: &PairArgs) -> Result<u8> {
    let (named, d) = load_pair(args)?;
    let hypotheses = full_report(&named.quiver, &d)?;
    let verdict = mukai_verdict_given(&named.quiver, &d, hypotheses.mukai_hypotheses())?;
    emit(&json!({ "vertices": named.names, "hypotheses": hypotheses, "verdict": verdict }), None)?;
    Ok(if verdict.is_counterexample() { EXIT_FINDING } else { 0 })
}

fn invariants(args: &PairArgs) -> Result<u8> {
    let (named, d) = load_pair(args)?;
    let met = full_report(&named.quiver, &d)?.mukai_hypotheses();
    let verdict = mukai_verdict_given(&named.quiver, &d, met)?;
    emit(&verdict, None)?;
    Ok(if verdict.hypotheses == HypothesisStatus::Met && verdict.is_counterexample() { EXIT_FINDING } else { 0 })
}

fn run_sweep(args: &SweepArgs) -> Result<u8> {
    let config = SweepConfig {
        dedupe_isomorphic: !args.no_dedupe,
        cross_check_engines: args.cross_check,
        budget: args.budget,
        workers: args.workers,
        ..SweepConfig::new(args.max_vertices, args.max_multiplicity, args.max_dim_entry)
    };
    let report = sweep(&config)?;
    emit(&report, args.report.as_deref())?;
    if let Some(path) = &args.csv {
        let file = fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
        write_equality_csv(&report, file)?;
    }
    let t = &report.totals;
    eprintln!(
        "{} quivers, {} pairs, {} passing hypotheses, {} equality, {} counterexamples, {:.1}s",
        t.quivers,
        t.pairs,
        t.passing_hypotheses,
        t.equality,
        report.counterexamples.len(),
        report.wall_time_seconds
    );
    if let Some(e) = &report.error {
        eprintln!("sweep aborted: {e}");
        return Ok(1);
    }
    Ok(if report.confirmed() { 0 } else { EXIT_FINDING })
}

fn lemma(cmd: &LemmaCommand) -> Result<u8> {
    match cmd {
        LemmaCommand::Check { a, b } => {
            let inst = PartialSumInstance::new(a.clone(), b.clone())?;
            let verdict = lemma_verdict(&inst);
            emit(
                &json!({
                    "a": inst.a(),
                    "b": inst.b(),
                    "verdict": verdict,
                    "grid": d_grid(&inst),
                    "distinct_grid_values": distinct_grid_values(&inst),
                    "grid_lower_bound": grid_lower_bound(&inst),
                }),
                None,
            )?;
            Ok(if verdict.is_violation() { EXIT_FINDING } else { 0 })
        }
        LemmaCommand::Sweep { max_k, max_l, max_value, naive, budget, report } => {
            let config = LemmaSearchConfig {
                canonical_order: !naive,
                budget: *budget,
                ..LemmaSearchConfig::new(*max_k, *max_l, *max_value)
            };
            let result = exhaustive_lemma_search(&config)?;
            emit(&result, report.as_deref())?;
            eprintln!(
                "{} instances, {} satisfy the hypothesis, {} equality, {} violations",
                result.instances,
                result.hypothesis_instances,
                result.equality_instances,
                result.violations.len()
            );
            Ok(if result.confirmed() { 0 } else { EXIT_FINDING })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(args) => check(args),
        Command::Invariants(args) => invariants(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Lemma(cmd) => lemma(cmd),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
