//! Parameter grids and derivative-free searches for the largest CHSH value.
//!
//! Every evaluation is a pure function of its parameters, and every random
//! stream is derived from `(seed, restart index)`. Results are therefore
//! identical whether restarts run sequentially or concurrently, as long as
//! they are collected by index.

pub mod simplex;

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};
use core::fmt;
use core::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::analytic::{ch_closed, ClosedFormPoint};
use crate::bell::{bell_record, factorized_record, Settings, SettingsQuadruple};
use crate::math;
use crate::optics::ExperimentConfig;
use crate::{Error, Result};

pub use simplex::{SimplexOptions, SimplexResult};

/// Fixed phase argument of the baseline family.
pub const BASELINE_DPHI: f64 = FRAC_PI_2;
/// Fixed `ξ - η` of the baseline family.
pub const BASELINE_XI_MINUS_ETA: f64 = 3.0 * core::f64::consts::FRAC_PI_4;
/// Searched oscillator intensity range `α² ∈ [min, max]`.
pub const INTENSITY_RANGE: (f64, f64) = (1e-6, 6.0);
/// Default cap on grid evaluations.
pub const DEFAULT_GRID_BUDGET: usize = 4_000_000;

/// Which measurement parameters are free.
///
/// Oscillator amplitudes never change between a party's two settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintFamily {
    /// Free `(α², ξ+η)`; `Δφ = π/2`, `ξ-η = 3π/4`, settings offset by `π/2`.
    PaperBaseline,
    /// Free `(ξ, ξ', η, η', φ1, φ2, α²)` with equal amplitudes.
    RelaxedPhases,
    /// Free `(ξ, ξ', η, η', φ1, φ2, α1², α2²)`.
    RelaxedAmplitudes,
}

impl ConstraintFamily {
    pub const ALL: [ConstraintFamily; 3] = [
        ConstraintFamily::PaperBaseline,
        ConstraintFamily::RelaxedPhases,
        ConstraintFamily::RelaxedAmplitudes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstraintFamily::PaperBaseline => "paper_baseline",
            ConstraintFamily::RelaxedPhases => "relaxed_phases",
            ConstraintFamily::RelaxedAmplitudes => "relaxed_amplitudes",
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            ConstraintFamily::PaperBaseline => &["alpha_sq", "xi_plus_eta"],
            ConstraintFamily::RelaxedPhases => {
                &["xi", "xi_prime", "eta", "eta_prime", "phi1", "phi2", "alpha_sq"]
            }
            ConstraintFamily::RelaxedAmplitudes => &[
                "xi",
                "xi_prime",
                "eta",
                "eta_prime",
                "phi1",
                "phi2",
                "alpha1_sq",
                "alpha2_sq",
            ],
        }
    }

    pub fn dim(self) -> usize {
        self.parameter_names().len()
    }

    /// Whether parameter `i` is an oscillator intensity (otherwise an angle).
    pub fn is_intensity(self, i: usize) -> bool {
        self.parameter_names()[i].starts_with("alpha")
    }

    /// Search box: intensities in [`INTENSITY_RANGE`], angles in `[0, 2π)`.
    pub fn bounds(self) -> Vec<(f64, f64)> {
        (0..self.dim())
            .map(|i| if self.is_intensity(i) { INTENSITY_RANGE } else { (0.0, TAU) })
            .collect()
    }

    /// Whether parameter `i` is a 2π-periodic angle. The baseline angle sum
    /// is not: shifting it by 2π moves both analyzers by π.
    pub fn is_periodic(self, i: usize) -> bool {
        !self.is_intensity(i) && self != ConstraintFamily::PaperBaseline
    }

    /// Clamps intensities and the baseline angle sum into the search box.
    /// Periodic angles are left alone so the simplex geometry is not
    /// distorted.
    pub fn project(self, params: &mut [f64]) {
        for (i, p) in params.iter_mut().enumerate() {
            if self.is_intensity(i) {
                *p = p.clamp(INTENSITY_RANGE.0, INTENSITY_RANGE.1);
            } else if !self.is_periodic(i) {
                *p = p.clamp(0.0, TAU);
            }
        }
    }

    /// Copy with [`project`](Self::project) applied and periodic angles
    /// wrapped into `[0, 2π)`.
    pub fn canonical(self, params: &[f64]) -> Vec<f64> {
        let mut p = params.to_vec();
        self.project(&mut p);
        for (i, v) in p.iter_mut().enumerate() {
            if self.is_periodic(i) {
                *v = math::wrap_angle(*v);
            }
        }
        p
    }

    /// Physical configuration and settings for a parameter vector.
    pub fn configure(self, params: &[f64], tail_eps: f64) -> Result<(ExperimentConfig, Settings)> {
        if params.len() != self.dim() {
            return Err(Error::InvalidInput("parameter vector has the wrong length"));
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("parameters must be finite"));
        }
        let intensity = |x: f64| {
            if x < 0.0 {
                Err(Error::InvalidInput("intensities must be non-negative"))
            } else {
                Ok(math::sqrt(x))
            }
        };
        Ok(match self {
            ConstraintFamily::PaperBaseline => {
                intensity(params[0])?;
                let cfg = ExperimentConfig::from_closed_form(params[0], BASELINE_DPHI, tail_eps);
                let quad = SettingsQuadruple::from_sum_difference(params[1], BASELINE_XI_MINUS_ETA);
                (cfg, quad.settings())
            }
            ConstraintFamily::RelaxedPhases | ConstraintFamily::RelaxedAmplitudes => {
                let (a1, a2) = if self == ConstraintFamily::RelaxedPhases {
                    let a = intensity(params[6])?;
                    (a, a)
                } else {
                    (intensity(params[6])?, intensity(params[7])?)
                };
                let cfg = ExperimentConfig::asymmetric(a1, a2, params[4], params[5], tail_eps);
                let settings = Settings {
                    a: params[0],
                    a_prime: params[1],
                    b: params[2],
                    b_prime: params[3],
                };
                (cfg, settings)
            }
        })
    }
}

impl fmt::Display for ConstraintFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstraintFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstraintFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or(Error::InvalidInput("unknown constraint family"))
    }
}

/// How a point is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalPath {
    /// Closed form; baseline family only.
    Analytic,
    /// Per-station Fock-space numerics ([`factorized_record`]).
    Numeric,
    /// Full four-mode brute force ([`bell_record`]).
    Dense,
}

impl EvalPath {
    pub fn name(self) -> &'static str {
        match self {
            EvalPath::Analytic => "analytic",
            EvalPath::Numeric => "numeric",
            EvalPath::Dense => "dense",
        }
    }
}

impl FromStr for EvalPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(EvalPath::Analytic),
            "numeric" => Ok(EvalPath::Numeric),
            "dense" => Ok(EvalPath::Dense),
            _ => Err(Error::InvalidInput("unknown evaluation path")),
        }
    }
}

/// One evaluated point.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    /// Grid index (row-major) or restart index.
    pub index: usize,
    pub params: Vec<f64>,
    pub ch: f64,
    pub chsh: f64,
    pub path: EvalPath,
}

/// `(CH, CHSH)` of a parameter vector.
pub fn evaluate(family: ConstraintFamily, params: &[f64], path: EvalPath, tail_eps: f64) -> Result<(f64, f64)> {
    match path {
        EvalPath::Analytic => {
            if family != ConstraintFamily::PaperBaseline {
                return Err(Error::InvalidInput("the analytic path only covers paper_baseline"));
            }
            if params.len() != 2 {
                return Err(Error::InvalidInput("parameter vector has the wrong length"));
            }
            let p = ClosedFormPoint::from_sum_difference(params[1], BASELINE_XI_MINUS_ETA, BASELINE_DPHI, params[0]);
            let ch = ch_closed(&p);
            Ok((ch, 2.0 + 4.0 * ch))
        }
        EvalPath::Numeric | EvalPath::Dense => {
            let (cfg, settings) = family.configure(params, tail_eps)?;
            let rec = if path == EvalPath::Numeric {
                factorized_record(&cfg, &settings)?
            } else {
                bell_record(&cfg, &settings)?
            };
            Ok((rec.ch, 2.0 + 4.0 * rec.ch))
        }
    }
}

/// One grid axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl GridAxis {
    pub fn closed(lo: f64, hi: f64, steps: usize) -> Self {
        GridAxis {
            lo,
            hi,
            steps,
            lo_open: false,
            hi_open: false,
        }
    }

    /// `(lo, hi]`
    pub fn open_low(lo: f64, hi: f64, steps: usize) -> Self {
        GridAxis {
            lo_open: true,
            ..Self::closed(lo, hi, steps)
        }
    }

    /// `[lo, hi)`
    pub fn open_high(lo: f64, hi: f64, steps: usize) -> Self {
        GridAxis {
            hi_open: true,
            ..Self::closed(lo, hi, steps)
        }
    }

    /// A single point.
    pub fn point(x: f64) -> Self {
        Self::closed(x, x, 1)
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.hi < self.lo {
            return Err(Error::InvalidInput("grid axis needs finite lo <= hi"));
        }
        match self.steps {
            0 => Err(Error::InvalidInput("grid axis needs at least one step")),
            1 if self.lo != self.hi => Err(Error::InvalidInput("a one-step axis must have lo == hi")),
            _ => Ok(()),
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            return self.lo;
        }
        let span = self.hi - self.lo;
        let n = self.steps as f64;
        let i = i as f64;
        match (self.lo_open, self.hi_open) {
            (false, false) => self.lo + span * i / (n - 1.0),
            (true, false) => self.lo + span * (i + 1.0) / n,
            (false, true) => self.lo + span * i / n,
            (true, true) => self.lo + span * (i + 1.0) / (n + 1.0),
        }
    }
}

/// Evaluates every grid point, first axis slowest.
pub fn grid_scan(
    family: ConstraintFamily,
    axes: &[GridAxis],
    path: EvalPath,
    tail_eps: f64,
    budget: usize,
) -> Result<Vec<ScanRecord>> {
    grid_points(family, axes, budget)?
        .into_iter()
        .enumerate()
        .map(|(index, params)| {
            let (ch, chsh) = evaluate(family, &params, path, tail_eps)?;
            Ok(ScanRecord {
                index,
                params,
                ch,
                chsh,
                path,
            })
        })
        .collect()
}

/// Parameter vectors of a grid in row-major order.
pub fn grid_points(family: ConstraintFamily, axes: &[GridAxis], budget: usize) -> Result<Vec<Vec<f64>>> {
    if axes.len() != family.dim() {
        return Err(Error::InvalidInput("one grid axis per free parameter is required"));
    }
    for axis in axes {
        axis.validate()?;
    }
    let required = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.steps))
        .unwrap_or(usize::MAX);
    if required > budget {
        return Err(Error::GridBudgetExceeded { required, budget });
    }
    let mut points = Vec::with_capacity(required);
    let mut idx = alloc::vec![0usize; axes.len()];
    for _ in 0..required {
        points.push(idx.iter().zip(axes).map(|(&i, a)| a.value(i)).collect());
        for d in (0..axes.len()).rev() {
            idx[d] += 1;
            if idx[d] < axes[d].steps {
                break;
            }
            idx[d] = 0;
        }
    }
    Ok(points)
}

/// Multi-start search configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Latin-hypercube points drawn per restart; the best seeds the simplex.
    pub lhs_samples: usize,
    pub simplex: SimplexOptions,
    pub path: EvalPath,
    pub tail_eps: f64,
}

impl SearchOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        SearchOptions {
            restarts,
            seed,
            lhs_samples: 24,
            simplex: SimplexOptions::default(),
            path: EvalPath::Numeric,
            tail_eps: 1e-12,
        }
    }
}

/// Outcome of one restart.
#[derive(Clone, Debug, PartialEq)]
pub struct RestartTrace {
    pub restart: usize,
    /// Best Latin-hypercube point, where the simplex started.
    pub start: Vec<f64>,
    pub start_chsh: f64,
    pub best: ScanRecord,
    pub evaluations: usize,
    pub converged: bool,
    pub final_diameter: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub family: ConstraintFamily,
    pub best: ScanRecord,
    pub trace: Vec<RestartTrace>,
}

impl SearchOutcome {
    pub fn total_evaluations(&self) -> usize {
        self.trace.iter().map(|t| t.evaluations).sum()
    }
}

/// Uniform draw from `[0, 1)` with 53 random bits.
pub fn unit_sample(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    ((unit_sample(rng) * n as f64) as usize).min(n - 1)
}

/// Random stream of one restart, independent of every other restart.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Latin-hypercube design of `samples` points in the box `bounds`.
pub fn latin_hypercube(rng: &mut ChaCha8Rng, bounds: &[(f64, f64)], samples: usize) -> Vec<Vec<f64>> {
    let mut points = alloc::vec![alloc::vec![0.0; bounds.len()]; samples];
    for (d, &(lo, hi)) in bounds.iter().enumerate() {
        let mut strata: Vec<usize> = (0..samples).collect();
        for i in (1..samples).rev() {
            strata.swap(i, below(rng, i + 1));
        }
        for (point, &s) in points.iter_mut().zip(&strata) {
            point[d] = lo + (hi - lo) * (s as f64 + unit_sample(rng)) / samples as f64;
        }
    }
    points
}

/// Runs restart number `restart` of a search.
pub fn run_restart(family: ConstraintFamily, opts: &SearchOptions, restart: usize) -> Result<RestartTrace> {
    if opts.lhs_samples == 0 {
        return Err(Error::InvalidInput("at least one seeding sample is required"));
    }
    let bounds = family.bounds();
    let mut rng = restart_rng(opts.seed, restart);
    let design = latin_hypercube(&mut rng, &bounds, opts.lhs_samples);

    let chsh_at = |x: &[f64]| evaluate(family, x, opts.path, opts.tail_eps).map(|v| v.1);
    let mut start = design[0].clone();
    let mut start_chsh = f64::NEG_INFINITY;
    for p in &design {
        let v = chsh_at(p)?;
        if v > start_chsh {
            start_chsh = v;
            start = p.clone();
        }
    }

    let ranges: Vec<f64> = bounds.iter().map(|(lo, hi)| hi - lo).collect();
    let mut failure = None;
    let result = simplex::minimize(
        |x| match chsh_at(x) {
            Ok(v) => -v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        |x| family.project(x),
        &start,
        &ranges,
        &opts.simplex,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let params = family.canonical(&result.x);
    let (ch, chsh) = evaluate(family, &params, opts.path, opts.tail_eps)?;
    Ok(RestartTrace {
        restart,
        start,
        start_chsh,
        best: ScanRecord {
            index: restart,
            params,
            ch,
            chsh,
            path: opts.path,
        },
        evaluations: result.evaluations + opts.lhs_samples,
        converged: result.converged,
        final_diameter: result.diameter,
    })
}

/// Highest-CHSH record of a trace; the lowest restart index wins ties.
pub fn select_best(trace: &[RestartTrace]) -> Option<ScanRecord> {
    trace
        .iter()
        .fold(None::<&RestartTrace>, |best, t| match best {
            Some(b) if b.best.chsh >= t.best.chsh => Some(b),
            _ => Some(t),
        })
        .map(|t| t.best.clone())
}

/// Latin-hypercube seeded simplex search maximizing CHSH over a family.
pub fn maximize_chsh(family: ConstraintFamily, opts: &SearchOptions) -> Result<SearchOutcome> {
    if opts.restarts == 0 {
        return Err(Error::InvalidInput("at least one restart is required"));
    }
    let trace = (0..opts.restarts)
        .map(|r| run_restart(family, opts, r))
        .collect::<Result<Vec<_>>>()?;
    assemble_outcome(family, trace)
}

/// Builds the outcome from restarts collected in index order.
pub fn assemble_outcome(family: ConstraintFamily, trace: Vec<RestartTrace>) -> Result<SearchOutcome> {
    let best = select_best(&trace).ok_or(Error::InvalidInput("empty restart trace"))?;
    Ok(SearchOutcome { family, best, trace })
}
