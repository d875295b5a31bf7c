//! `optimize`: multi-start search for the largest CHSH value in a family.

use std::collections::BTreeMap;

use photon_bell_core::scan::{
    evaluate, maximize_chsh, ConstraintFamily, EvalPath, RestartTrace, SearchOptions, SimplexOptions,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{to_json, Provenance, SINGLE_EXPONENT};
use crate::CommandOutput;

#[derive(Clone, Debug, Serialize)]
pub struct BestPoint {
    pub restart: usize,
    pub params: BTreeMap<&'static str, f64>,
    pub ch: f64,
    pub chsh: f64,
    pub path: &'static str,
    /// CHSH of the same point on the numeric path, for analytic searches.
    pub chsh_numeric: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub restart: usize,
    pub start: Vec<f64>,
    pub start_chsh: f64,
    pub params: Vec<f64>,
    pub chsh: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub final_diameter: f64,
}

impl From<&RestartTrace> for TraceEntry {
    fn from(t: &RestartTrace) -> Self {
        TraceEntry {
            restart: t.restart,
            start: t.start.clone(),
            start_chsh: t.start_chsh,
            params: t.best.params.clone(),
            chsh: t.best.chsh,
            evaluations: t.evaluations,
            converged: t.converged,
            final_diameter: t.final_diameter,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchBudget {
    pub lhs_samples: usize,
    pub max_evals_per_simplex: usize,
    pub simplex_tol: f64,
    pub total_evaluations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimizeReport {
    pub provenance: Provenance,
    pub family: &'static str,
    pub parameter_names: &'static [&'static str],
    pub restarts: usize,
    pub seed: u64,
    pub budget: SearchBudget,
    pub violation_found: bool,
    /// `2 + margin`; a best value above it counts as a violation.
    pub violation_threshold: f64,
    pub best: BestPoint,
    pub trace: Vec<TraceEntry>,
}

/// The baseline has closed forms; the relaxed families go through the
/// factorized numeric path.
pub fn search_path(family: ConstraintFamily) -> EvalPath {
    match family {
        ConstraintFamily::PaperBaseline => EvalPath::Analytic,
        _ => EvalPath::Numeric,
    }
}

pub fn search_options(cfg: &RunConfig) -> SearchOptions {
    SearchOptions {
        lhs_samples: cfg.lhs_samples,
        simplex: SimplexOptions {
            diameter_tol: cfg.simplex_tol,
            max_evals: cfg.max_evals,
            ..SimplexOptions::default()
        },
        path: search_path(cfg.family),
        tail_eps: cfg.cutoff_eps,
        ..SearchOptions::new(cfg.restarts_or_default(), cfg.seed)
    }
}

pub fn run(cfg: &RunConfig) -> CliResult<CommandOutput> {
    let family = cfg.family;
    let opts = search_options(cfg);
    let outcome = maximize_chsh(family, &opts)?;
    let best = &outcome.best;
    let chsh_numeric = match best.path {
        EvalPath::Analytic => Some(evaluate(family, &best.params, EvalPath::Numeric, cfg.cutoff_eps)?.1),
        _ => None,
    };
    let threshold = 2.0 + cfg.violation_margin;
    let report = OptimizeReport {
        provenance: Provenance::new("optimize", cfg, SINGLE_EXPONENT),
        family: family.name(),
        parameter_names: family.parameter_names(),
        restarts: opts.restarts,
        seed: cfg.seed,
        budget: SearchBudget {
            lhs_samples: opts.lhs_samples,
            max_evals_per_simplex: opts.simplex.max_evals,
            simplex_tol: opts.simplex.diameter_tol,
            total_evaluations: outcome.total_evaluations(),
        },
        violation_found: best.chsh > threshold,
        violation_threshold: threshold,
        best: BestPoint {
            restart: best.index,
            params: family.parameter_names().iter().copied().zip(best.params.iter().copied()).collect(),
            ch: best.ch,
            chsh: best.chsh,
            path: best.path.name(),
            chsh_numeric,
        },
        trace: outcome.trace.iter().map(TraceEntry::from).collect(),
    };
    let summary = format!(
        "{}: best CHSH {:.12} over {} restarts ({} evaluations), violation found: {}\n",
        family.name(),
        best.chsh,
        opts.restarts,
        outcome.total_evaluations(),
        report.violation_found
    );
    Ok(CommandOutput {
        body: to_json(&report),
        summary,
        failure: None,
    })
}
