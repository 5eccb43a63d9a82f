mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "turing-flow", version, about = "Turing machines, shift encodings and harmonic Navier-Stokes flows on T^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct Common {
    /// Tolerance override (integrator tolerance for flow commands).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Sample or seed-point count override.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Random seed for sample generation.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory; results are printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on a tape for at most `horizon` steps.
    TmRun {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        tape: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        horizon: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Binary machine encoding, program tape and the encoded initial point.
    TmEncode {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        tape: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact orbit of the generalized shift as CSV.
    ShiftOrbit {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        tape: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        horizon: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Machine halting versus orbit entering the halting region.
    Equiv {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        tape: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        horizon: u64,
        #[arg(long, default_value_t = 8)]
        m: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Time-one map of an isotopy at sample points, with area defects.
    DiskMap {
        #[arg(long)]
        isotopy: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Suspension structure validation.
    Suspend {
        #[arg(long)]
        isotopy: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Poincare return map of the suspension against the disk map.
    ReturnMap {
        #[arg(long)]
        isotopy: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Gauge normalization of a manufactured closed form `c dt + dg`.
    Gauge {
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 0.3)]
        radius: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Build the glued structure and run every check.
    Build {
        #[arg(long)]
        descriptor: PathBuf,
        /// Grid size of the field dump written under `--out`.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Re-run one named check on the structure described by a descriptor.
    Verify {
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(value_enum)]
        check: Check,
        /// Viscosities for `ns`; defaults to the descriptor's list.
        #[arg(long, value_delimiter = ',')]
        nu: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Harmonicity,
    Ns,
    Symmetry,
    Cosymplectic,
    ReturnMap,
    Gauge,
}

/// Normal completion with a negative answer (still running, disagreement,
/// failed check) exits with 2; errors exit with 1.
pub enum Status {
    Pass,
    Negative,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::TmRun { machine, tape, horizon, common } => commands::tm_run(&machine, tape.as_deref(), horizon, &common),
        Command::TmEncode { machine, tape, common } => commands::tm_encode(&machine, tape.as_deref(), &common),
        Command::ShiftOrbit { machine, tape, horizon, common } => commands::shift_orbit(&machine, tape.as_deref(), horizon, &common),
        Command::Equiv { machine, tape, horizon, m, common } => commands::equiv(&machine, tape.as_deref(), horizon, m, &common),
        Command::DiskMap { isotopy, common } => commands::disk_map(&isotopy, &common),
        Command::Suspend { isotopy, common } => commands::suspend(&isotopy, &common),
        Command::ReturnMap { isotopy, common } => commands::return_map(&isotopy, &common),
        Command::Gauge { c, eps, radius, common } => commands::gauge(c, eps, radius, &common),
        Command::Build { descriptor, grid, common } => commands::build(&descriptor, grid, &common),
        Command::Verify { descriptor, check, nu, common } => commands::verify(&descriptor, check, &nu, &common),
    };
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
