mod admissible;
mod config;
mod error;
mod output;
mod plot;
mod solve;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;
use error::CliError;
use output::Output;

/// Exponent calculus and radial ground states for
/// `-Δu + V(|x|) u = K(|x|) f(u)`.
#[derive(Parser)]
#[command(name = "radial-nls", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides `out` in the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Solver seed; overrides `solver.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Solve even when no existence result covers the instance.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Exponents, intervals and the verdict of every existence result.
    Admissible,
    /// Tables of the exponent curves, one CSV per regime.
    PlotExponents,
    /// Compute a ground state or global minimizer.
    Solve,
    /// Run the invariant checks for the configured instance.
    Verify,
    /// Admissibility (and optionally solves) over a list of rate values.
    Sweep,
}

fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    let mut config = config::load(path)?;
    if let Some(out) = &cli.out {
        config.out = out.display().to_string();
    }
    if let Some(seed) = cli.seed {
        config.solver.seed = seed;
    }
    if cli.force {
        config.solver.force = true;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let config = resolve(cli)?;
    let out = Output::new(&config.out);
    match cli.command {
        Command::Admissible => admissible::run(&config, &out),
        Command::PlotExponents => plot::run(&config, &out),
        Command::Solve => solve::run(&config, &out),
        Command::Verify => verify::run(&config, &out),
        Command::Sweep => sweep::run(&config, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
