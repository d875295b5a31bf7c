//! Run configuration: a JSON file, overridden by command-line flags.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::{Path, PathBuf};

use photon_bell_core::scan::{ConstraintFamily, BASELINE_XI_MINUS_ETA};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Contents of a `--config` file. Every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub alpha_sq: Option<f64>,
    /// Bob's oscillator intensity when it differs from Alice's.
    pub alpha2_sq: Option<f64>,
    pub phi1: Option<f64>,
    pub phi2: Option<f64>,
    pub dphi: Option<f64>,
    pub xi_minus_eta: Option<f64>,
    pub xi_plus_eta: Option<f64>,
    pub tol: Option<f64>,
    pub physics_tol: Option<f64>,
    pub identity_tol: Option<f64>,
    pub cutoff_eps: Option<f64>,
    pub seed: Option<u64>,
    pub grid: Option<String>,
    pub family: Option<String>,
    pub restarts: Option<usize>,
    pub lhs_samples: Option<usize>,
    pub max_evals: Option<usize>,
    pub simplex_tol: Option<f64>,
    pub violation_margin: Option<f64>,
    pub verify_points: Option<usize>,
    pub out: Option<PathBuf>,
    pub degrees: Option<bool>,
}

/// Values given on the command line; they win over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub cutoff_eps: Option<f64>,
    pub seed: Option<u64>,
    pub dphi: Option<f64>,
    pub xi_minus_eta: Option<f64>,
    pub grid: Option<String>,
    pub family: Option<String>,
    pub restarts: Option<usize>,
    pub out: Option<PathBuf>,
    pub degrees: bool,
}

/// Tolerance ladder. `oracle` bounds agreement between independent
/// computations, `physics` bounds invariants such as no-signalling and
/// unitarity, `identity` bounds algebraic identities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub oracle: f64,
    pub physics: f64,
    pub identity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub alpha_sq: f64,
    pub alpha2_sq: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub dphi: f64,
    pub xi_minus_eta: f64,
    pub xi_plus_eta: f64,
    pub tol: Tolerances,
    pub cutoff_eps: f64,
    pub seed: u64,
    pub grid: (usize, usize),
    pub family: ConstraintFamily,
    pub restarts: Option<usize>,
    pub lhs_samples: usize,
    pub max_evals: usize,
    pub simplex_tol: f64,
    pub violation_margin: f64,
    pub verify_points: usize,
    pub out: Option<PathBuf>,
    pub degrees: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(ConfigFile::default(), &Overrides::default()).expect("defaults are valid")
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses `NxM` into `(N, M)`.
pub fn parse_grid(s: &str) -> CliResult<(usize, usize)> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| config_err(format!("grid must look like 200x200, got {s:?}")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| config_err(format!("grid sizes must be positive integers, got {s:?}")))
    };
    Ok((parse(a)?, parse(b)?))
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(config_err(format!("{name} must be a positive finite number, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(config_err(format!("{name} must be finite, got {v}")))
    }
}

fn intensity(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() && (0.0..=100.0).contains(&v) {
        Ok(v)
    } else {
        Err(config_err(format!("{name} must lie in [0, 100], got {v}")))
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> CliResult<RunConfig> {
        let file = match path {
            None => ConfigFile::default(),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|source| CliError::Read {
                    path: p.to_path_buf(),
                    source,
                })?;
                serde_json::from_str(&text).map_err(|source| CliError::ConfigFile {
                    path: p.to_path_buf(),
                    source,
                })?
            }
        };
        RunConfig::resolve(file, overrides)
    }

    /// Merges file and flags, converts supplied angles from degrees when
    /// asked, fills defaults and validates.
    pub fn resolve(file: ConfigFile, o: &Overrides) -> CliResult<RunConfig> {
        let degrees = o.degrees || file.degrees.unwrap_or(false);
        let angle = |name: &str, given: Option<f64>, default: f64| -> CliResult<f64> {
            match given {
                None => Ok(default),
                Some(v) => finite(name, if degrees { v.to_radians() } else { v }),
            }
        };
        let dphi = angle("dphi", o.dphi.or(file.dphi), FRAC_PI_2)?;
        let phi1 = angle("phi1", file.phi1, 0.0)?;
        let phi2 = angle("phi2", file.phi2, phi1 + dphi)?;
        let xi_minus_eta = angle("xi_minus_eta", o.xi_minus_eta.or(file.xi_minus_eta), BASELINE_XI_MINUS_ETA)?;
        let xi_plus_eta = angle("xi_plus_eta", file.xi_plus_eta, PI)?;

        let alpha_sq = intensity("alpha_sq", file.alpha_sq.unwrap_or(1.0))?;
        let alpha2_sq = intensity("alpha2_sq", file.alpha2_sq.unwrap_or(alpha_sq))?;

        let oracle = positive("tol", o.tol.or(file.tol).unwrap_or(1e-9))?;
        let tol = Tolerances {
            oracle,
            physics: positive("physics_tol", file.physics_tol.unwrap_or(oracle / 10.0))?,
            identity: positive("identity_tol", file.identity_tol.unwrap_or(oracle / 1000.0))?,
        };
        let cutoff_eps = o.cutoff_eps.or(file.cutoff_eps).unwrap_or(1e-12);
        if !(cutoff_eps > 0.0 && cutoff_eps < 1.0) {
            return Err(config_err(format!("cutoff_eps must lie in (0, 1), got {cutoff_eps}")));
        }

        let grid = match o.grid.as_deref().or(file.grid.as_deref()) {
            Some(s) => parse_grid(s)?,
            None => (200, 200),
        };
        let family_name = o.family.as_deref().or(file.family.as_deref()).unwrap_or("paper_baseline");
        let family: ConstraintFamily = family_name.parse().map_err(|_| {
            config_err(format!(
                "unknown family {family_name:?}; expected paper_baseline, relaxed_phases or relaxed_amplitudes"
            ))
        })?;
        let restarts = o.restarts.or(file.restarts);
        if restarts == Some(0) {
            return Err(config_err("restarts must be at least 1"));
        }
        let lhs_samples = file.lhs_samples.unwrap_or(24);
        let max_evals = file.max_evals.unwrap_or(20_000);
        let verify_points = file.verify_points.unwrap_or(100);
        if lhs_samples == 0 || max_evals == 0 || verify_points == 0 {
            return Err(config_err("lhs_samples, max_evals and verify_points must be positive"));
        }

        Ok(RunConfig {
            alpha_sq,
            alpha2_sq,
            phi1,
            phi2,
            dphi,
            xi_minus_eta,
            xi_plus_eta,
            tol,
            cutoff_eps,
            seed: o.seed.or(file.seed).unwrap_or(0),
            grid,
            family,
            restarts,
            lhs_samples,
            max_evals,
            simplex_tol: positive("simplex_tol", file.simplex_tol.unwrap_or(1e-10))?,
            violation_margin: positive("violation_margin", file.violation_margin.unwrap_or(1e-6))?,
            verify_points,
            out: o.out.clone().or(file.out),
            degrees,
        })
    }

    /// Restarts for the configured family: 32 for the baseline, 64 otherwise.
    pub fn restarts_or_default(&self) -> usize {
        self.restarts.unwrap_or(match self.family {
            ConstraintFamily::PaperBaseline => 32,
            _ => 64,
        })
    }
}
