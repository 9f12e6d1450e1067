use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use arens_cli::experiment;
use arens_cli::ops::{self, RunContext};
use arens_core::Tolerances;
use clap::{Parser, Subcommand};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "arens", version, about = "Resultants, extension inverses and perturbations in Banach algebras")]
struct Cli {
    /// Seed for every random stream; overrides an experiment's configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest accepted residual ‖x·x⁻¹ − 1‖ of an inverse certificate.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file for operations, output directory for experiments.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resultant of α and β over a base algebra, with P(b₀) and the inverse verdict.
    Resultant { input: String },
    /// Invert an element of an extension through its resultant.
    AhInvert { input: String },
    /// Move an element of an extension into the invertibles by changing b₀ only.
    Perturb { input: String },
    /// Make a singular matrix invertible by changing the entries on a permutation.
    MatrixPerturb { input: String },
    /// Spectrum annulus, boundary windings and inverse of a Laurent element.
    Beurling { input: String },
    /// Closure-of-invertibles verdict for a polynomial in the disc algebra.
    DiscClosure { input: String },
    /// Print a worked example: square-root-resultant, circle-non-fullness, x-bar-inverse.
    Demo { name: String },
    /// Seeded batch experiments.
    Experiment {
        #[command(subcommand)]
        action: ExperimentAction,
    },
}

#[derive(Subcommand)]
enum ExperimentAction {
    /// Run a config; exit code 0 iff every configured threshold is met.
    Run { config: PathBuf },
}

/// Inline JSON if it starts with `{` or `[`, `-` for stdin, otherwise a path.
fn read_input(arg: &str) -> Result<Value> {
    let text = match arg.trim_start().chars().next() {
        Some('{') | Some('[') => arg.to_string(),
        _ if arg == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        _ => fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?,
    };
    serde_json::from_str(&text).context("input is not valid JSON")
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means an experiment ran but missed a threshold.
fn run(cli: Cli) -> Result<bool> {
    let mut tol = Tolerances::default();
    if let Some(t) = cli.tol {
        anyhow::ensure!(t > 0.0, "--tol must be positive");
        tol = tol.with_invert(t);
    }
    let ctx = RunContext { seed: cli.seed.unwrap_or(0), tol };
    let op: fn(&Value, &RunContext) -> Result<Value> = match &cli.command {
        Command::Resultant { .. } => ops::resultant,
        Command::AhInvert { .. } => ops::ah_invert,
        Command::Perturb { .. } => ops::perturb,
        Command::MatrixPerturb { .. } => ops::matrix,
        Command::Beurling { .. } => ops::beurling,
        Command::DiscClosure { .. } => ops::disc_closure,
        Command::Demo { name } => {
            emit(&arens_cli::demo::run(name, &ctx)?, cli.out.as_ref())?;
            return Ok(true);
        }
        Command::Experiment { action: ExperimentAction::Run { config } } => {
            let cfg = experiment::load(config, cli.seed)?;
            let report = experiment::run(&cfg, tol)?;
            if let Some(dir) = cli.out.as_ref().or(cfg.output.as_ref()) {
                report.write(dir)?;
            }
            print!("{}", report.summary_json()?);
            return Ok(report.summary.thresholds_met);
        }
    };
    let input = match &cli.command {
        Command::Resultant { input }
        | Command::AhInvert { input }
        | Command::Perturb { input }
        | Command::MatrixPerturb { input }
        | Command::Beurling { input }
        | Command::DiscClosure { input } => input,
        _ => unreachable!(),
    };
    let result = op(&read_input(input)?, &ctx)?;
    emit(&(serde_json::to_string_pretty(&result)? + "\n"), cli.out.as_ref())?;
    Ok(true)
}
