pub mod figure;
pub mod optimize;
pub mod split;
pub mod verify;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::write_file;
use crate::CommandOutput;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Figure,
    Optimize,
    Split,
}

pub fn run(command: Command, cfg: &RunConfig) -> CliResult<CommandOutput> {
    match command {
        Command::Verify => verify::run(cfg),
        Command::Figure => figure::run(cfg),
        Command::Optimize => optimize::run(cfg),
        Command::Split => split::run(cfg),
    }
}

/// Runs a command and writes its body to `cfg.out` when set. Returns the
/// output so the caller can print the body when no path was given.
pub fn run_and_write(command: Command, cfg: &RunConfig) -> CliResult<CommandOutput> {
    let out = run(command, cfg)?;
    if let Some(path) = &cfg.out {
        write_file(path, &out.body)?;
    }
    Ok(out)
}

/// Turns a recorded failure into the verification error.
pub fn into_result(out: &CommandOutput) -> CliResult<()> {
    match &out.failure {
        Some(check) => Err(CliError::Verification { check: check.clone() }),
        None => Ok(()),
    }
}
