use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use photon_bell::commands::{self, Command};
use photon_bell::config::{Overrides, RunConfig};
use photon_bell::error::{CliError, EXIT_CONFIG, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "photon-bell", version, about = "Simulate and verify the single-photon homodyne Bell test")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// JSON configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Oracle tolerance. Physics and identity checks use tol/10 and tol/1000.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Poisson tail probability allowed beyond the photon-number cutoff.
    #[arg(long, global = true)]
    cutoff_eps: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Oscillator phase difference used by figure and verify defaults.
    #[arg(long, global = true, allow_hyphen_values = true)]
    dphi: Option<f64>,
    /// Analyzer angle difference.
    #[arg(long, global = true, allow_hyphen_values = true)]
    xi_minus_eta: Option<f64>,
    /// Grid size as NxM (alpha^2 points by angle-sum points).
    #[arg(long, global = true)]
    grid: Option<String>,
    /// paper_baseline, relaxed_phases or relaxed_amplitudes.
    #[arg(long, global = true)]
    family: Option<String>,
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Read supplied angles in degrees.
    #[arg(long, global = true)]
    degrees: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Run the invariant suite and write a JSON report.
    Verify,
    /// Write the CH/CHSH grid as CSV.
    Figure,
    /// Search a constraint family for a CHSH violation.
    Optimize,
    /// Report the entangled/residual state split.
    Split,
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let command = match cli.command {
        Cmd::Verify => Command::Verify,
        Cmd::Figure => Command::Figure,
        Cmd::Optimize => Command::Optimize,
        Cmd::Split => Command::Split,
    };
    let overrides = Overrides {
        tol: cli.tol,
        cutoff_eps: cli.cutoff_eps,
        seed: cli.seed,
        dphi: cli.dphi,
        xi_minus_eta: cli.xi_minus_eta,
        grid: cli.grid,
        family: cli.family,
        restarts: cli.restarts,
        out: cli.out,
        degrees: cli.degrees,
    };
    let cfg = RunConfig::load(cli.config.as_deref(), &overrides)?;
    let out = commands::run_and_write(command, &cfg)?;
    if cfg.out.is_none() {
        let mut stdout = std::io::stdout().lock();
        // a closed pipe is not worth a panic
        let _ = stdout.write_all(out.body.as_bytes()).and_then(|_| stdout.flush());
    }
    eprint!("{}", out.summary);
    commands::into_result(&out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { EXIT_OK as u8 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("photon-bell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
