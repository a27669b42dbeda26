//! `ghq`: algebra verification, spectra, uncertainties, and physical scales
//! of quantum mechanics on a noncommutative plane.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ghq_core::fock::HamiltonianKind;
use thiserror::Error;

mod commands;
mod config;

use config::{ConfigFile, Format, Grid, RunConfig, Task};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INTERNAL: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ghq", version, about = "Noncommutative phase-space algebra and numerics")]
struct Cli {
    #[command(flatten)]
    shared: SharedArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct SharedArgs {
    /// Momentum deformation η̄ in oscillator units, 0..=0.5
    #[arg(long, global = true)]
    eta_bar: Option<f64>,
    /// Position deformation θ̄ in oscillator units, 0..=0.5
    #[arg(long, global = true)]
    theta_bar: Option<f64>,
    /// Set θ̄ = η̄ so that the creation operators commute
    #[arg(long, global = true)]
    impose_be: bool,
    /// Fock levels per mode
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Fock levels per mode of the convergence partner
    #[arg(long, global = true)]
    n_larger: Option<usize>,
    /// Boundary band excluded from residual checks
    #[arg(long, global = true)]
    margin: Option<usize>,
    /// Number of eigenvalues
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Output format: csv or json
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key = value file with defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact check of the deformed commutation relations and the Bose-Einstein condition
    VerifyAlgebra,
    /// Expand and normal-order an operator expression
    Eval {
        expression: String,
        /// Parameter binding NAME=EXPR, e.g. theta=eta/(mu*omega)^2 (repeatable)
        #[arg(long = "bind")]
        bindings: Vec<String>,
    },
    /// Lowest eigenvalues of the oscillator or Landau Hamiltonian
    Spectrum {
        /// oscillator or landau
        #[arg(long)]
        hamiltonian: Option<HamiltonianKind>,
        /// Also compare first-order perturbation slopes with finite differences
        #[arg(long)]
        slopes: bool,
    },
    /// Minimal uncertainties over Gaussian trial states and in the ground state
    Uncertainty {
        /// Fock levels per mode for the trial-state search
        #[arg(long)]
        family_n: Option<usize>,
    },
    /// Deformation parameters and minimal scales in SI units
    Constants {
        /// Magnetic field in tesla
        #[arg(long)]
        b_field: Option<f64>,
        /// Charge in coulomb
        #[arg(long)]
        charge: Option<f64>,
        /// Mass in kilogram
        #[arg(long)]
        mass: Option<f64>,
        /// Oscillator angular frequency in 1/s (required)
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Run a task over a grid of (η̄, θ̄)
    Sweep {
        /// spectrum or uncertainty
        #[arg(long)]
        task: Option<Task>,
        /// Comma-separated η̄ values
        #[arg(long)]
        eta_grid: Option<Grid>,
        /// Comma-separated θ̄ values (ignored with --impose-be)
        #[arg(long)]
        theta_grid: Option<Grid>,
        /// oscillator or landau
        #[arg(long)]
        hamiltonian: Option<HamiltonianKind>,
        /// Fock levels per mode for the trial-state search
        #[arg(long)]
        family_n: Option<usize>,
    },
}

fn run_config(s: &SharedArgs, file: &ConfigFile, hamiltonian: Option<HamiltonianKind>, family_n: Option<usize>) -> Result<RunConfig, CliError> {
    RunConfig {
        eta_bar: file.pick(s.eta_bar, "eta-bar", 0.0)?,
        theta_bar: file.pick(s.theta_bar, "theta-bar", 0.0)?,
        impose_be: file.pick_switch(s.impose_be, "impose-be")?,
        n: file.pick(s.n, "n", config::DEFAULT_N)?,
        n_larger: file.pick(s.n_larger, "n-larger", config::DEFAULT_N_LARGER)?,
        margin: file.pick(s.margin, "margin", config::DEFAULT_MARGIN)?,
        k: file.pick(s.k, "k", config::DEFAULT_K)?,
        format: file.pick(s.format, "format", Format::Csv)?,
        out: file.pick_opt(s.out.clone(), "out")?,
        hamiltonian: file.pick(hamiltonian, "hamiltonian", HamiltonianKind::Oscillator)?,
        family_n: file.pick(family_n, "family-n", config::DEFAULT_FAMILY_N)?,
    }
    .validate()
}

fn dispatch(cli: Cli) -> Result<commands::Outcome, CliError> {
    let file = match &cli.shared.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let s = &cli.shared;
    match cli.command {
        Command::VerifyAlgebra => commands::verify_algebra(&run_config(s, &file, None, None)?),
        Command::Eval { expression, bindings } => commands::eval(&run_config(s, &file, None, None)?, &expression, &bindings),
        Command::Spectrum { hamiltonian, slopes } => {
            let cfg = run_config(s, &file, hamiltonian, None)?;
            commands::spectrum(&cfg, file.pick_switch(slopes, "slopes")?)
        }
        Command::Uncertainty { family_n } => commands::uncertainty(&run_config(s, &file, None, family_n)?),
        Command::Constants { b_field, charge, mass, omega } => {
            let cfg = run_config(s, &file, None, None)?;
            let inputs = commands::ConstantsArgs {
                b_field: file.pick_opt(b_field, "b-field")?,
                charge: file.pick_opt(charge, "charge")?,
                mass: file.pick_opt(mass, "mass")?,
                omega: file.pick_opt(omega, "omega")?,
            };
            commands::constants(&cfg, &inputs)
        }
        Command::Sweep { task, eta_grid, theta_grid, hamiltonian, family_n } => {
            let cfg = run_config(s, &file, hamiltonian, family_n)?;
            let task = file.pick(task, "task", Task::Spectrum)?;
            let eta_grid = file.pick_opt(eta_grid, "eta-grid")?;
            let theta_grid = file.pick_opt(theta_grid, "theta-grid")?;
            commands::sweep(&cfg, task, eta_grid, theta_grid)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli).and_then(commands::emit) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
