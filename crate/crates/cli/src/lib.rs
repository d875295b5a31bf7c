//! Library side of the `photon-bell` command: configuration, the four
//! subcommands and their report formats.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

/// What a subcommand produced.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    /// Written to `--out`, or stdout when no path is configured.
    pub body: String,
    /// Human-readable summary for stderr.
    pub summary: String,
    /// Name of the first failed check; maps to exit status 1.
    pub failure: Option<String>,
}
