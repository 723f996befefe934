//! Command-line experiments over stable b-matchings: seeded Monte Carlo
//! campaigns (`simulate`), analytic curves on matching supports
//! (`analyze`), and curve-to-curve distances with a CI-friendly exit code
//! (`compare`).

pub mod analyze;
pub mod campaign;
pub mod compare;
pub mod config;
pub mod curve;
pub mod manifest;
pub mod naming;
pub mod simulate;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime};

use anyhow::{ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::config::{CurveArg, ModelArgs, OutputArgs};
use crate::curve::Curve;
use crate::manifest::Manifest;

#[derive(Debug, Parser)]
#[command(
    name = "stabmatch",
    version,
    about = "Stable b-matchings of acyclic preference systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a seeded campaign and write empirical curves.
    Simulate(SimulateArgs),
    /// Write mean-field, exact and fluid curves for a model.
    Analyze(AnalyzeArgs),
    /// Compare two curve files; exit 0 iff the sup distance is within --tol.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 100)]
    pub instances: u64,
    /// Campaign seed; instance k uses a seed derived from (seed, k).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0: one per core). Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Grid size of the fluid solvers.
    #[arg(long, default_value_t = 2000)]
    pub grid: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    pub file_a: PathBuf,
    pub file_b: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    pub tol: f64,
    /// Write the full JSON report here and print only a summary line.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Files written by a `simulate` or `analyze` run, manifest excluded.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub out: PathBuf,
    pub files: Vec<String>,
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Simulate(args) => {
            let summary = cmd_simulate(&args)?;
            println!(
                "wrote {} files to {}",
                summary.files.len() + 1,
                summary.out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze(args) => {
            let summary = cmd_analyze(&args)?;
            println!(
                "wrote {} files to {}",
                summary.files.len() + 1,
                summary.out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare(args) => {
            let (report, pass) = cmd_compare(&args)?;
            match &args.report {
                Some(path) => {
                    fs::write(path, serde_json::to_string_pretty(&report)? + "\n")
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!(
                        "sup_distance={} mean_abs_distance={} points={} tol={} {}",
                        report.sup_distance,
                        report.mean_abs_distance,
                        report.points,
                        args.tol,
                        if pass { "PASS" } else { "FAIL" }
                    );
                }
                None => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn prepare_dir(out: &Path) -> Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating output directory {}", out.display()))
}

fn output_echo(out: &OutputArgs) -> serde_json::Value {
    json!({
        "curves": out.curves,
        "nodes": out.nodes,
        "bins": out.bins,
        "format": out.format,
    })
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<RunSummary> {
    let started = (SystemTime::now(), Instant::now());
    ensure!(args.instances >= 1, "--instances must be at least 1");
    let model = args.model.resolve()?;
    model.check_curves(&args.output)?;
    let plan = simulate::plan(&model, &args.output, args.instances, args.seed)?;
    let result = campaign::run(&plan, args.jobs)?;

    let out = &args.output.out;
    prepare_dir(out)?;
    let mut files = Vec::new();
    for c in simulate::curves(&model, &plan, &result)? {
        files.push(c.write(out, args.output.format)?);
    }
    if args.output.curves.contains(&CurveArg::GraphStats) {
        let table = simulate::graph_table(&model, &result);
        files.push(table.write(out, "graph_stats", args.output.format)?);
    }
    let config = json!({
        "model": model,
        "output": output_echo(&args.output),
        "instances": args.instances,
        "jobs": args.jobs,
    });
    let mut manifest = Manifest::new("simulate", config, Some(args.seed), started.0);
    manifest.files = files.clone();
    manifest.wall_time_s = started.1.elapsed().as_secs_f64();
    manifest.write(out)?;
    Ok(RunSummary {
        out: out.clone(),
        files,
    })
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<RunSummary> {
    let started = (SystemTime::now(), Instant::now());
    let model = args.model.resolve()?;
    model.check_curves(&args.output)?;
    let curves = analyze::analytic_curves(&model, &args.output, args.grid)?;

    let out = &args.output.out;
    prepare_dir(out)?;
    let mut files = Vec::new();
    for c in &curves {
        files.push(c.write(out, args.output.format)?);
    }
    let config = json!({
        "model": model,
        "output": output_echo(&args.output),
        "grid": args.grid,
    });
    let mut manifest = Manifest::new("analyze", config, None, started.0);
    manifest.files = files.clone();
    manifest.wall_time_s = started.1.elapsed().as_secs_f64();
    manifest.write(out)?;
    Ok(RunSummary {
        out: out.clone(),
        files,
    })
}

/// The comparison report and whether its sup distance is within `--tol`.
pub fn cmd_compare(args: &CompareArgs) -> Result<(compare::Comparison, bool)> {
    ensure!(args.tol >= 0.0, "--tol must be non-negative");
    let a = Curve::read(&args.file_a)?;
    let b = Curve::read(&args.file_b)?;
    let report = compare::compare(&a, &b)?;
    let pass = report.sup_distance <= args.tol;
    Ok((report, pass))
}
