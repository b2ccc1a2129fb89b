//! Command-line driver for the `invosc` library: every pipeline runs from a
//! JSON config and emits CSV or JSON stamped with the config hash.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("numerical error: {0}")]
    Numerical(#[from] invosc::Error),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "invosc",
    version,
    about = "Forced quantum inverted oscillator: closed, tunneling and open-system runs"
)]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// JSON config file; missing keys take their defaults.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write the result here instead of stdout. The effective config is
    /// written next to it as `<out>.config.json`.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Override a config value, e.g. `--set bath.gamma=0.5`. Repeatable,
    /// applied after the config file.
    #[arg(long = "set", global = true, value_name = "PATH=VALUE")]
    pub overrides: Vec<String>,

    /// Print the effective config (all defaults explicit) and exit.
    #[arg(long, global = true)]
    pub print_config: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Gaussian evolution under the configured force.
    Evolve(EvolveArgs),
    /// Free evolution with a δ-kick of momentum `kick.p` at `kick.t1`.
    Kick,
    /// Instantaneous and period-averaged barrier transmission over a β sweep.
    Tunnel(TunnelArgs),
    /// Poles and residues of the damped response function.
    OpenPoles(OpenPolesArgs),
    /// Green's function, mean motion and variance with a Drude bath.
    OpenEvolve,
    /// Cross-check closed forms against their brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Also dump ψ on the `wavefunction` x-grid at `wavefunction.t` to FILE.
    #[arg(long, value_name = "FILE")]
    pub wavefunction: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TunnelArgs {
    /// Emit the barrier profile V(ξ) for each configured force instead.
    #[arg(long)]
    pub barrier: bool,
}

#[derive(Debug, Args)]
pub struct OpenPolesArgs {
    /// Emit the critical line D = 0 as CSV over `a` in [A_MIN, A_MAX].
    #[arg(long, num_args = 3, value_names = ["A_MIN", "A_MAX", "N"], allow_negative_numbers = true)]
    pub boundary: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run the grid check with `verify.coarse_dt` (expected to fail).
    #[arg(long)]
    pub coarse: bool,
}

/// What a run produces: the main document, extra files and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub extra_files: Vec<(PathBuf, String)>,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

impl Outcome {
    pub fn success(body: String) -> Self {
        Outcome {
            body,
            extra_files: Vec::new(),
            warnings: Vec::new(),
            exit_code: 0,
        }
    }
}

/// Loads the config named on the command line and merges the overrides.
pub fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let text = match &cli.config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?,
        ),
        None => None,
    };
    RunConfig::load(text.as_deref(), &cli.overrides)
}

/// Thread pool sized by `INVOSC_THREADS` (unset or 0: rayon's default).
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var("INVOSC_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::Config(format!(
                "INVOSC_THREADS must be a non-negative integer, got `{v}`"
            ))
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start thread pool: {e}")))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut config = load_config(cli)?;
    if cli.print_config {
        return Ok(Outcome::success(config.to_pretty_json()));
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Config("no command given; see --help".into()));
    };
    if let Command::OpenPoles(OpenPolesArgs { boundary: Some(b) }) = command {
        config = commands::apply_boundary_args(config, b)?;
    }
    let pool = thread_pool()?;
    let mut outcome = pool.install(|| match command {
        Command::Evolve(args) => commands::evolve(&config, args.wavefunction.as_deref()),
        Command::Kick => commands::kick(&config),
        Command::Tunnel(args) if args.barrier => commands::barrier_profile(&config),
        Command::Tunnel(_) => commands::tunnel(&config),
        Command::OpenPoles(args) if args.boundary.is_some() => commands::boundary(&config),
        Command::OpenPoles(_) => commands::open_poles(&config),
        Command::OpenEvolve => commands::open_evolve(&config),
        Command::Verify(args) => verify::verify(&config, args.coarse),
    })?;
    if let Some(out) = &cli.out {
        let mut sidecar = out.clone().into_os_string();
        sidecar.push(".config.json");
        outcome
            .extra_files
            .push((PathBuf::from(sidecar), config.to_pretty_json()));
    }
    Ok(outcome)
}
