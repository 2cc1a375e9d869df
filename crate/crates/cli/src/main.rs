//! `atomcert`: run the quantum-cohomology pipeline on an instance and emit
//! a certificate.
//!
//! Exit status is 0 for a certified (or cleanly completed partial) run, 2
//! for an inconclusive one, and 1 when the engine itself fails.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use atomcert_core::certificate::{self, PipelineRun, RunOptions, Stage};
use atomcert_core::instance::load_instance;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "atomcert",
    version,
    about = "Exact irrationality certificates from quantum cohomology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the period coefficients.
    Period(CommonArgs),
    /// Derive the self-adjoint quantum multiplication ansatz.
    Ansatz(CommonArgs),
    /// Eliminate the symmetric block to a scalar operator.
    DeriveOperator(CommonArgs),
    /// Solve for the unknown invariants by period matching.
    Solve(CommonArgs),
    /// Characteristic polynomials of Euler multiplication.
    Spectrum(CommonArgs),
    /// Run the whole pipeline and decide the verdict.
    Certify(CommonArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Instance file, or `verra` for the bundled instance.
    #[arg(long, default_value = "verra")]
    instance: PathBuf,
    /// Truncation order, overriding the instance.
    #[arg(long)]
    order: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Last stage to run; defaults to the subcommand's own stage.
    #[arg(long)]
    through: Option<Stage>,
}

/// The resolved run configuration.
#[derive(Debug)]
struct RunConfig {
    instance: PathBuf,
    order: Option<usize>,
    out: Option<PathBuf>,
    format: Format,
    through: Stage,
    /// Section printed by the text report.
    focus: Stage,
}

impl Command {
    fn config(self) -> RunConfig {
        let (args, focus) = match self {
            Command::Period(a) => (a, Stage::Period),
            Command::Ansatz(a) => (a, Stage::Ansatz),
            Command::DeriveOperator(a) => (a, Stage::Eliminate),
            Command::Solve(a) => (a, Stage::Solve),
            Command::Spectrum(a) => (a, Stage::Spectrum),
            Command::Certify(a) => (a, Stage::Atoms),
        };
        RunConfig {
            instance: args.instance,
            order: args.order,
            out: args.out,
            format: args.format,
            through: args.through.unwrap_or(focus),
            focus,
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<PipelineRun, String> {
    let inst = load_instance(&cfg.instance).map_err(|e| e.to_string())?;
    let opts = RunOptions {
        order: cfg.order,
        through: cfg.through,
    };
    certificate::run(&inst, &opts).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cfg = Cli::parse().command.config();
    let run = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    let text = match cfg.format {
        Format::Json => run.to_json_string(),
        Format::Text => report::render(&run, cfg.focus),
    };
    let written = match &cfg.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {}", path.display(), e))
        }
        None => {
            print!("{}", text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {}", e);
        return ExitCode::from(1);
    }
    ExitCode::from(run.exit_code() as u8)
}
