//! Configuration-driven front end for `fockforge`: builds lattice models
//! from TOML files, runs the verification suites and writes JSON or CSV.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod record;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fockforge::fock::Budget;

use crate::commands::{Outcome, RunOptions};
use crate::config::{Format, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "fockforge", version, about = "Finite-dimensional second quantization checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the configured one-particle operator.
    Spectrum(Common),
    /// Run the configured suite of invariant checks.
    Verify(Common),
    /// Free energy by the eigenvalue formula and by the Fock-space trace.
    FreeEnergy(Common),
    /// Pairwise Hilbert–Schmidt distances of Dirac-sea projections.
    Equivalence(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
    /// Record per-check wall time (makes output run dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fockforge: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    let (kind, common) = match &cli.command {
        Command::Spectrum(c) => ("spectrum", c),
        Command::Verify(c) => ("verify", c),
        Command::FreeEnergy(c) => ("free-energy", c),
        Command::Equivalence(c) => ("equivalence", c),
    };
    let mut cfg = RunConfig::load(&common.config)?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if common.jobs == Some(0) {
        return Err(CliError::Config("--jobs must be positive".into()));
    }
    let budget = Budget::from_env().map_err(|e| CliError::Config(e.to_string()))?;
    let opts = RunOptions {
        format: common.format.map(Into::into),
        timing: common.timing,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = common.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let outcome: Outcome = pool.install(|| match kind {
        "spectrum" => commands::spectrum(&cfg, &opts),
        "verify" => commands::verify(&cfg, &opts, budget),
        "free-energy" => commands::free_energy(&cfg, &opts, budget),
        _ => commands::equivalence(&cfg, &opts),
    })?;

    let target = common.out.clone().or_else(|| cfg.output.path.clone().map(PathBuf::from));
    match target {
        Some(path) => std::fs::write(&path, &outcome.text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome.exit_code)
}
