use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gcclone::commands::{self, format_clone_report};
use gcclone::{verify, CliError, RunConfig};

/// Optimal asymmetric cloning of qubits on the x-z great circle.
#[derive(Debug, Parser)]
#[command(name = "gcclone", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full invariant suite and report one line per check.
    Verify(RunArgs),
    /// Clone a single input and print the diagnostics.
    Clone {
        /// Input angle on the great circle (radians unless --degrees).
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        eta1: f64,
        #[arg(long)]
        eta2: f64,
        #[arg(long)]
        degrees: bool,
    },
    /// Recover the feasibility boundary and write it as CSV.
    BoundSweep {
        #[arg(long, default_value_t = 9)]
        n_phi: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate the cloner along the optimal circle and write it as CSV.
    FidelitySweep {
        #[arg(long, default_value_t = 17)]
        n_points: usize,
        #[arg(long)]
        out: PathBuf,
        /// Inputs scanned per circle point.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = RunConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = RunConfig::default().psd_tol)]
    psd_tol: f64,
    #[arg(long, default_value_t = RunConfig::default().radius_tol)]
    radius_tol: f64,
    #[arg(long, default_value_t = RunConfig::default().budget)]
    budget: usize,
    #[arg(long, default_value_t = RunConfig::default().samples)]
    samples: usize,
}

impl From<&RunArgs> for RunConfig {
    fn from(a: &RunArgs) -> Self {
        RunConfig {
            seed: a.seed,
            psd_tol: a.psd_tol,
            radius_tol: a.radius_tol,
            budget: a.budget,
            samples: a.samples,
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify(args) => {
            let report = verify::run(&RunConfig::from(&args))?;
            println!("{report}");
            Ok(report.exit_code())
        }
        Command::Clone { theta, eta1, eta2, degrees } => {
            let theta = if degrees { theta.to_radians() } else { theta };
            let report = commands::cmd_clone(theta, eta1, eta2)?;
            print!("{}", format_clone_report(&report));
            Ok(0)
        }
        Command::BoundSweep { n_phi, out, run } => {
            let config = RunConfig::from(&run);
            let rows = commands::cmd_bound_sweep(n_phi, &config, &out)?;
            let worst = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
            println!("seed {}", config.seed);
            println!("wrote {} rows to {}; max deviation {:.3e}", rows.len(), out.display(), worst);
            Ok(0)
        }
        Command::FidelitySweep { n_points, out, samples } => {
            let rows = commands::cmd_fidelity_sweep(n_points, samples, &out)?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
