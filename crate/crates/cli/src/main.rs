//! `fdwave`: solves, convergence sweeps, spectra and solver benchmarks for
//! distributed-order fractional diffusion-wave problems.

mod commands;
mod config;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{load, BenchArgs, CliResult, ConvergenceArgs, NoExtra, RunArgs, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "fdwave", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// March one problem and report iterations, timings and errors.
    Solve(RunArgs),
    /// Error and observed order along one refinement axis.
    Convergence {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        extra: ConvergenceArgs,
    },
    /// Eigenvalues of the scheme matrix, optionally preconditioned.
    Spectrum(RunArgs),
    /// Time several methods on one configuration.
    Bench {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        extra: BenchArgs,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let table = match cli.command {
        Command::Solve(args) => {
            let (args, _) = load(args, NoExtra {})?;
            let cfg = RunConfig::resolve(args)?;
            (commands::solve(&cfg)?, cfg)
        }
        Command::Convergence { run, extra } => {
            let (args, extra) = load(run, extra)?;
            let cfg = RunConfig::resolve(args)?;
            let (axis, levels) = extra.resolve()?;
            (commands::convergence(&cfg, axis, &levels)?, cfg)
        }
        Command::Spectrum(args) => {
            let (args, _) = load(args, NoExtra {})?;
            let cfg = RunConfig::resolve(args)?;
            (commands::spectrum(&cfg)?, cfg)
        }
        Command::Bench { run, extra } => {
            let (args, extra) = load(run, extra)?;
            let cfg = RunConfig::resolve(args)?;
            (commands::bench(&cfg, extra.methods.as_deref())?, cfg)
        }
    };
    let (table, cfg) = table;
    table.emit(&cfg)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fdwave: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
