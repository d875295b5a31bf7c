//! `split`: the entangled single-photon component and the residual `|Λ>`.

use std::f64::consts::SQRT_2;

use photon_bell_core::bell::{
    chsh_decomposition, lambda_cross_terms, split_state, tsirelson_two_qubit, CrossTerm, SettingsQuadruple,
};
use photon_bell_core::fock::inner;
use photon_bell_core::optics::ExperimentConfig;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{to_json, Provenance, SINGLE_EXPONENT};
use crate::CommandOutput;

pub const TOP_CROSS_TERMS: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct CrossTermEntry {
    /// Counts over `(a1, b1, a2, b2)`.
    pub occupation: [usize; 4],
    pub label: String,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
    pub magnitude: f64,
    pub probability: f64,
    pub alice_label: i8,
    pub bob_label: i8,
}

impl From<&CrossTerm> for CrossTermEntry {
    fn from(t: &CrossTerm) -> Self {
        let [a1, b1, a2, b2] = t.occupation;
        CrossTermEntry {
            occupation: t.occupation,
            label: format!("|{a1},{b1},{a2},{b2}>"),
            amplitude_re: t.amplitude.re,
            amplitude_im: t.amplitude.im,
            magnitude: t.amplitude.norm(),
            probability: t.probability(),
            alice_label: t.alice_label,
            bob_label: t.bob_label,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub psi1_term: f64,
    pub lambda_term: f64,
    pub interference_term: f64,
    pub sum: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Checked {
    pub value: f64,
    pub expected: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub provenance: Provenance,
    pub alpha_sq: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub xi: f64,
    pub eta: f64,
    pub c1: Checked,
    pub lambda_norm_coeff: f64,
    /// Largest CHSH value of `|ψ1>` over all settings.
    pub psi1_tsirelson: Checked,
    pub chsh_psi1: f64,
    pub chsh_lambda: f64,
    pub chsh_full: f64,
    pub lambda_below_classical_bound: bool,
    pub decomposition: Decomposition,
    pub overlap_psi1_lambda: f64,
    pub reconstruction_error: f64,
    pub cross_term_1011: Checked,
    pub cross_terms: Vec<CrossTermEntry>,
}

pub fn run(cfg: &RunConfig) -> CliResult<CommandOutput> {
    if cfg.alpha2_sq != cfg.alpha_sq {
        return Err(CliError::Config(format!(
            "split needs equal oscillator intensities, got alpha_sq = {} and alpha2_sq = {}",
            cfg.alpha_sq, cfg.alpha2_sq
        )));
    }
    let a2 = cfg.alpha_sq;
    let ecfg = ExperimentConfig::symmetric(a2.sqrt(), cfg.phi1, cfg.phi2, cfg.cutoff_eps);
    let split = split_state(&ecfg)?;
    let quad = SettingsQuadruple::from_sum_difference(cfg.xi_plus_eta, cfg.xi_minus_eta);
    let d = chsh_decomposition(&split, &quad.settings())?;
    let cross_1011 = split.lambda.amplitude_of(&[1, 0, 1, 1].into())?.norm();
    let report = SplitReport {
        provenance: Provenance::new("split", cfg, SINGLE_EXPONENT),
        alpha_sq: a2,
        phi1: cfg.phi1,
        phi2: cfg.phi2,
        xi: quad.xi,
        eta: quad.eta,
        c1: Checked {
            value: split.c1,
            expected: a2.sqrt() * (-a2).exp(),
        },
        lambda_norm_coeff: split.lambda_norm_coeff,
        psi1_tsirelson: Checked {
            value: tsirelson_two_qubit(&split.psi1)?,
            expected: 2.0 * SQRT_2,
        },
        chsh_psi1: d.chsh_psi1,
        chsh_lambda: d.chsh_lambda,
        chsh_full: d.full,
        lambda_below_classical_bound: d.chsh_lambda < 2.0,
        decomposition: Decomposition {
            psi1_term: d.psi1_term,
            lambda_term: d.lambda_term,
            interference_term: d.interference_term,
            sum: d.sum(),
            residual: d.residual(),
        },
        overlap_psi1_lambda: inner(&split.psi1, &split.lambda)?.norm(),
        reconstruction_error: split.reconstruct()?.distance(&split.full)?,
        cross_term_1011: Checked {
            value: cross_1011,
            expected: a2 * (-a2).exp() / (SQRT_2 * (1.0 - a2 * (-2.0 * a2).exp()).sqrt()),
        },
        cross_terms: lambda_cross_terms(&split, TOP_CROSS_TERMS).iter().map(CrossTermEntry::from).collect(),
    };
    let summary = format!(
        "alpha^2 = {a2}: c1 = {:.12}, CHSH(psi1) = {:.12}, CHSH(Lambda) = {:.12}, CHSH = {:.12}\n",
        split.c1, d.chsh_psi1, d.chsh_lambda, d.full
    );
    Ok(CommandOutput {
        body: to_json(&report),
        summary,
        failure: None,
    })
}
