//! Dense states on a truncated multimode Fock space.
//!
//! Amplitudes are stored over a mixed-radix index with one digit per mode,
//! the first mode being the most significant digit. Iterating the amplitude
//! slice therefore visits occupation vectors in lexicographic order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::math;
use crate::{Error, Result};

/// Largest `|alpha|^2` accepted by [`coherent_state`].
pub const MAX_COHERENT_INTENSITY: f64 = 1000.0;

/// Optical mode names. `A*`/`B*` are the beamsplitter inputs (local
/// oscillator and photon arm), `C*`/`D*` the detector ports behind them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeLabel {
    A1,
    B1,
    A2,
    B2,
    C1,
    D1,
    C2,
    D2,
}

impl ModeLabel {
    /// Port a mode is relabelled to after its station beamsplitter.
    /// Output modes map to themselves.
    pub fn output_port(self) -> ModeLabel {
        match self {
            ModeLabel::A1 => ModeLabel::C1,
            ModeLabel::B1 => ModeLabel::D1,
            ModeLabel::A2 => ModeLabel::C2,
            ModeLabel::B2 => ModeLabel::D2,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeLabel::A1 => "a1",
            ModeLabel::B1 => "b1",
            ModeLabel::A2 => "a2",
            ModeLabel::B2 => "b2",
            ModeLabel::C1 => "c1",
            ModeLabel::D1 => "d1",
            ModeLabel::C2 => "c2",
            ModeLabel::D2 => "d2",
        }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Photon-number truncation policy: a shared cutoff for every mode and the
/// tail probability it was sized for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffSpec {
    pub max_photons: usize,
    pub tail_eps: f64,
}

impl CutoffSpec {
    pub fn new(max_photons: usize, tail_eps: f64) -> Self {
        CutoffSpec {
            max_photons,
            tail_eps,
        }
    }

    /// Cutoff large enough for a coherent state of mean photon number
    /// `alpha_sq`, and never below one so a single photon always fits.
    pub fn for_intensity(alpha_sq: f64, tail_eps: f64) -> Self {
        CutoffSpec {
            max_photons: required_cutoff(alpha_sq, tail_eps).max(1),
            tail_eps,
        }
    }
}

/// Photon counts, one per mode, in the owning state's mode order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occupation(Vec<usize>);

impl Occupation {
    pub fn new(counts: &[usize]) -> Self {
        Occupation(counts.to_vec())
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl<const N: usize> From<[usize; N]> for Occupation {
    fn from(counts: [usize; N]) -> Self {
        Occupation(counts.to_vec())
    }
}

impl From<&[usize]> for Occupation {
    fn from(counts: &[usize]) -> Self {
        Occupation(counts.to_vec())
    }
}

/// Dense pure state over an ordered list of modes.
///
/// `leakage` accumulates the probability lost to truncation: coherent-state
/// tails at construction and amplitudes pushed above the cutoff by
/// beamsplitters.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    modes: Vec<ModeLabel>,
    cutoffs: Vec<usize>,
    amps: Vec<Complex64>,
    leakage: f64,
}

impl StateVector {
    /// All-zero state, useful as an accumulator.
    pub fn zeros(modes: &[ModeLabel], cutoffs: &[usize]) -> Result<Self> {
        check_modes(modes)?;
        if modes.len() != cutoffs.len() {
            return Err(Error::InvalidInput("one cutoff per mode is required"));
        }
        let dim = cutoffs.iter().map(|c| c + 1).product();
        Ok(StateVector {
            modes: modes.to_vec(),
            cutoffs: cutoffs.to_vec(),
            amps: vec![Complex64::new(0.0, 0.0); dim],
            leakage: 0.0,
        })
    }

    /// Wraps an explicit amplitude vector.
    pub fn from_amplitudes(
        modes: &[ModeLabel],
        cutoffs: &[usize],
        amps: Vec<Complex64>,
    ) -> Result<Self> {
        let mut s = Self::zeros(modes, cutoffs)?;
        if amps.len() != s.amps.len() {
            return Err(Error::InvalidInput("amplitude count does not match cutoffs"));
        }
        s.amps = amps;
        Ok(s)
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Accumulated truncation budget.
    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn set_leakage(&mut self, leakage: f64) {
        self.leakage = leakage;
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn mode_position(&self, mode: ModeLabel) -> Option<usize> {
        self.modes.iter().position(|&m| m == mode)
    }

    /// Index stride of each mode in the flat amplitude vector.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.modes.len()];
        for i in (0..self.modes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (self.cutoffs[i + 1] + 1);
        }
        strides
    }

    pub fn same_shape(&self, other: &StateVector) -> bool {
        self.modes == other.modes && self.cutoffs == other.cutoffs
    }

    pub fn index_of(&self, occ: &Occupation) -> Result<usize> {
        if occ.len() != self.modes.len() {
            return Err(Error::OccupationLength {
                expected: self.modes.len(),
                found: occ.len(),
            });
        }
        let mut idx = 0;
        for ((&n, &cutoff), &mode) in occ.counts().iter().zip(&self.cutoffs).zip(&self.modes) {
            if n > cutoff {
                return Err(Error::CutoffExceeded {
                    mode,
                    count: n,
                    cutoff,
                });
            }
            idx = idx * (cutoff + 1) + n;
        }
        Ok(idx)
    }

    pub fn occupation_at(&self, mut index: usize) -> Occupation {
        let mut counts = vec![0; self.modes.len()];
        for i in (0..self.modes.len()).rev() {
            let radix = self.cutoffs[i] + 1;
            counts[i] = index % radix;
            index /= radix;
        }
        Occupation(counts)
    }

    pub fn amplitude_of(&self, occ: &Occupation) -> Result<Complex64> {
        Ok(self.amps[self.index_of(occ)?])
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        let mut out = self.clone();
        out.amps.iter_mut().for_each(|a| *a *= factor);
        out
    }

    /// `self + factor * other` on identically shaped states.
    pub fn add_scaled(&self, factor: Complex64, other: &StateVector) -> Result<StateVector> {
        if !self.same_shape(other) {
            return Err(Error::ShapeMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.amps.iter_mut().zip(&other.amps) {
            *a += factor * b;
        }
        Ok(out)
    }

    /// Euclidean distance between two identically shaped states.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if !self.same_shape(other) {
            return Err(Error::ShapeMismatch);
        }
        let d: f64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok(math::sqrt(d))
    }

    /// The same state embedded in a space with larger cutoffs.
    pub fn padded(&self, cutoffs: &[usize]) -> Result<StateVector> {
        if cutoffs.len() != self.cutoffs.len() {
            return Err(Error::ShapeMismatch);
        }
        if cutoffs.iter().zip(&self.cutoffs).any(|(new, old)| new < old) {
            return Err(Error::InvalidInput("padding cannot shrink a cutoff"));
        }
        let mut out = StateVector::zeros(&self.modes, cutoffs)?;
        out.leakage = self.leakage;
        for (i, &a) in self.amps.iter().enumerate() {
            let j = out.index_of(&self.occupation_at(i))?;
            out.amps[j] = a;
        }
        Ok(out)
    }

    /// Copy with the modes renamed in place; the index layout is unchanged.
    pub fn relabeled(&self, modes: &[ModeLabel]) -> Result<StateVector> {
        if modes.len() != self.modes.len() {
            return Err(Error::ShapeMismatch);
        }
        check_modes(modes)?;
        let mut out = self.clone();
        out.modes = modes.to_vec();
        Ok(out)
    }

    /// Iterates `(occupation, amplitude)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (Occupation, Complex64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, &a)| (self.occupation_at(i), a))
    }
}

fn check_modes(modes: &[ModeLabel]) -> Result<()> {
    for (i, m) in modes.iter().enumerate() {
        if modes[..i].contains(m) {
            return Err(Error::DuplicateMode(*m));
        }
    }
    Ok(())
}

/// Number state `|occ>` over `modes`, every mode truncated at `cutoff`.
pub fn fock_basis_state(modes: &[ModeLabel], occ: &Occupation, cutoff: usize) -> Result<StateVector> {
    let cutoffs = vec![cutoff; modes.len()];
    let mut s = StateVector::zeros(modes, &cutoffs)?;
    let idx = s.index_of(occ)?;
    s.amps[idx] = Complex64::new(1.0, 0.0);
    Ok(s)
}

/// Truncated coherent state on a single mode.
///
/// `c_n = e^{-|a|^2/2} a^n / sqrt(n!)`, built by cumulative multiplication
/// with `a / sqrt(n)`. The truncation tail `1 - sum |c_n|^2` is stored as the
/// state's [`leakage`](StateVector::leakage).
pub fn coherent_state(mode: ModeLabel, amplitude: Complex64, cutoff: usize) -> Result<StateVector> {
    let intensity = amplitude.norm_sqr();
    if !intensity.is_finite() || intensity > MAX_COHERENT_INTENSITY {
        return Err(Error::AmplitudeOutOfRange(intensity));
    }
    let mut amps = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::new(math::exp(-intensity / 2.0), 0.0);
    amps.push(c);
    for n in 1..=cutoff {
        c = c * amplitude / math::sqrt(n as f64);
        amps.push(c);
    }
    let mut s = StateVector::from_amplitudes(&[mode], &[cutoff], amps)?;
    s.leakage = 1.0 - s.norm_sqr();
    Ok(s)
}

/// Tensor product in the given order. Mode labels must be disjoint.
pub fn tensor(parts: &[StateVector]) -> Result<StateVector> {
    let mut modes = Vec::new();
    let mut cutoffs = Vec::new();
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    let mut kept = 1.0;
    for part in parts {
        for &m in &part.modes {
            if modes.contains(&m) {
                return Err(Error::DuplicateMode(m));
            }
            modes.push(m);
        }
        cutoffs.extend_from_slice(&part.cutoffs);
        let mut next = Vec::with_capacity(amps.len() * part.amps.len());
        for a in &amps {
            for b in &part.amps {
                next.push(a * b);
            }
        }
        amps = next;
        kept *= 1.0 - part.leakage;
    }
    let mut s = StateVector::from_amplitudes(&modes, &cutoffs, amps)?;
    s.leakage = 1.0 - kept;
    Ok(s)
}

/// `<s1|s2>`, conjugate-linear in the first argument.
pub fn inner(s1: &StateVector, s2: &StateVector) -> Result<Complex64> {
    if !s1.same_shape(s2) {
        return Err(Error::ShapeMismatch);
    }
    Ok(s1
        .amps
        .iter()
        .zip(&s2.amps)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Smallest cutoff `N` whose Poisson(`alpha_sq`) tail `P(n > N)` is strictly
/// below `tail_eps`.
pub fn required_cutoff(alpha_sq: f64, tail_eps: f64) -> usize {
    if alpha_sq <= 0.0 {
        return 0;
    }
    let log_lambda = math::ln(alpha_sq);
    let term = |n: usize| math::exp(n as f64 * log_lambda - alpha_sq - math::lgamma(n as f64 + 1.0));

    // Terms are summed from the far tail inward so small suffix sums keep
    // their relative accuracy.
    let mut terms = Vec::new();
    let mut n = 0;
    loop {
        let t = term(n);
        terms.push(t);
        if n as f64 > 2.0 * alpha_sq + 10.0 && t < tail_eps * 1e-6 {
            break;
        }
        n += 1;
    }
    let mut tail = 0.0;
    let mut answer = terms.len() - 1;
    for cutoff in (0..terms.len()).rev() {
        // tail currently holds P(n > cutoff)
        if tail < tail_eps {
            answer = cutoff;
        } else {
            break;
        }
        tail += terms[cutoff];
    }
    answer
}
