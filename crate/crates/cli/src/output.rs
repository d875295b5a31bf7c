//! Number formatting, the provenance block and output writing.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::Path;

use photon_bell_core::analytic::{local_prob_closed, local_prob_double_exponent};
use photon_bell_core::detection::{station_favorable_prob, Station};
use photon_bell_core::fock::required_cutoff;
use photon_bell_core::optics::{build_input_state, run_network, ExperimentConfig};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// `x` with `digits` significant digits, in the style of C's `%.{digits}g`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The oracle's verdict on the exponent of the local favorable probability.
#[derive(Clone, Debug, Serialize)]
pub struct ErratumReport {
    pub alpha_sq: f64,
    pub x: f64,
    pub max_photons: usize,
    /// Brute-force `P(-1|x)` from the four-mode network.
    pub numeric: f64,
    /// `(1/2) e^{-α²} (α² cos²(x/2) + sin²(x/2))`
    pub single_exponent: f64,
    /// The same with `e^{-2α²}`.
    pub double_exponent: f64,
    pub single_exponent_residual: f64,
    pub double_exponent_residual: f64,
    /// `double / single`; equals `e^{-α²}`.
    pub ratio: f64,
    pub bound: f64,
    pub decision: String,
}

pub const SINGLE_EXPONENT: &str = "e^{-alpha^2}";
pub const DOUBLE_EXPONENT: &str = "e^{-2alpha^2}";

/// Decides the local-probability exponent by brute force at `α² = 1`,
/// `x = π/2`.
pub fn local_exponent_check(tail_eps: f64, tol: f64) -> CliResult<ErratumReport> {
    let (alpha_sq, x) = (1.0, FRAC_PI_2);
    let cfg = ExperimentConfig::symmetric(1.0, 0.0, 0.0, tail_eps);
    let budget = build_input_state(&cfg)?.leakage();
    let out = run_network(&cfg, x, 0.0)?;
    let numeric = station_favorable_prob(&out, Station::Alice)?;
    let single = local_prob_closed(x, alpha_sq);
    let double = local_prob_double_exponent(x, alpha_sq);
    let bound = tol + budget;
    let (rs, rd) = ((numeric - single).abs(), (numeric - double).abs());
    let decision = match (rs <= bound, rd <= bound) {
        (true, false) => SINGLE_EXPONENT,
        (false, true) => DOUBLE_EXPONENT,
        _ => "undetermined",
    };
    Ok(ErratumReport {
        alpha_sq,
        x,
        max_photons: cfg.cutoff.max_photons,
        numeric,
        single_exponent: single,
        double_exponent: double,
        single_exponent_residual: rs,
        double_exponent_residual: rd,
        ratio: double / single,
        bound,
        decision: decision.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CutoffInfo {
    pub tail_eps: f64,
    /// Cutoff used for the configured intensity.
    pub max_photons: usize,
    pub policy: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ToleranceInfo {
    pub oracle: f64,
    pub physics: f64,
    pub identity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub cutoff: CutoffInfo,
    pub tolerances: ToleranceInfo,
    pub eq10_exponent_decision: String,
    pub angle_input: &'static str,
    pub closed_form_phase_argument: &'static str,
}

impl Provenance {
    pub fn new(command: &'static str, cfg: &RunConfig, decision: &str) -> Provenance {
        Provenance {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed: cfg.seed,
            cutoff: CutoffInfo {
                tail_eps: cfg.cutoff_eps,
                max_photons: required_cutoff(cfg.alpha_sq.max(cfg.alpha2_sq), cfg.cutoff_eps).max(1),
                policy: "smallest N whose Poisson(alpha^2) tail is below tail_eps, at least 1, per run",
            },
            tolerances: ToleranceInfo {
                oracle: cfg.tol.oracle,
                physics: cfg.tol.physics,
                identity: cfg.tol.identity,
            },
            eq10_exponent_decision: decision.to_string(),
            angle_input: if cfg.degrees { "degrees" } else { "radians" },
            closed_form_phase_argument: "phi2 - phi1",
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, body: &str) -> CliResult<()> {
    fs::write(path, body).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0, 9), "0");
        assert_eq!(fmt_sig(-0.0, 9), "0");
        assert_eq!(fmt_sig(1.0, 9), "1");
        assert_eq!(fmt_sig(-0.20451530304272505, 9), "-0.204515303");
        assert_eq!(fmt_sig(1.1819387878290998, 9), "1.18193879");
        assert_eq!(fmt_sig(6.283185307179586, 9), "6.28318531");
        assert_eq!(fmt_sig(0.01, 9), "0.01");
        assert_eq!(fmt_sig(0.0001234567891, 9), "0.000123456789");
        assert_eq!(fmt_sig(1.234567891e-5, 9), "1.23456789e-05");
        assert_eq!(fmt_sig(123456789.0, 9), "123456789");
        assert_eq!(fmt_sig(1234567891.0, 9), "1.23456789e+09");
        assert_eq!(fmt_sig(2.5e-300, 9), "2.5e-300");
        assert_eq!(fmt_sig(0.99999999999, 9), "1");
    }

    #[test]
    fn erratum_decides_single_exponent() {
        let r = local_exponent_check(1e-12, 1e-9).unwrap();
        assert_eq!(r.decision, SINGLE_EXPONENT);
        assert!((r.numeric - 0.183_939_720_585_721_16).abs() < 1e-12);
        assert!((r.ratio - (-1.0f64).exp()).abs() < 1e-15);
    }
}
