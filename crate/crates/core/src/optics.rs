//! Beamsplitters on mode pairs and the two-station interferometer.
//!
//! Creation operators transform as
//!
//! ```text
//! lo† -> cos(θ/2) c† + i sin(θ/2) d†
//! ph† -> i sin(θ/2) c† + cos(θ/2) d†
//! ```
//!
//! so a photon entering the photon arm reaches the counting port `c` with
//! probability `sin²(θ/2)` and the local oscillator is transmitted to `c` with
//! probability `cos²(θ/2)`. The same symmetric convention is used for the
//! source beamsplitter that produces the input state.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::fock::{coherent_state, tensor, CutoffSpec, ModeLabel, StateVector};
use crate::math;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Variable beamsplitter with its photon-number-conserving blocks.
///
/// Block `n` is the `(n+1) x (n+1)` matrix `U[k][j] = <k, n-k| U |j, n-j>`
/// where the first count belongs to the oscillator port on input and to the
/// `c` port on output. Blocks are built by applying one transformed creation
/// operator at a time, so every column stays normalized.
#[derive(Clone, Debug)]
pub struct Beamsplitter {
    theta: f64,
    blocks: Vec<Vec<Complex64>>,
}

impl Beamsplitter {
    pub fn new(theta: f64, max_total: usize) -> Self {
        // The ladder recursion loses accuracy geometrically in the sector
        // size unless the angle is small, so build a small rotation and
        // square it back up.
        let mut halvings = 0;
        let mut small = theta;
        while math::abs(small) > 0.25 {
            small /= 2.0;
            halvings += 1;
        }
        let mut blocks = ladder_blocks(small, max_total);
        for _ in 0..halvings {
            for (n, block) in blocks.iter_mut().enumerate() {
                *block = square(block, n + 1);
            }
        }
        Beamsplitter { theta, blocks }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Transmittivity `cos²(θ/2)`.
    pub fn transmittivity(&self) -> f64 {
        let t = math::cos(self.theta / 2.0);
        t * t
    }

    pub fn max_total(&self) -> usize {
        self.blocks.len() - 1
    }

    /// `<c_count, d_count| U |lo_count, ph_count>`; zero across sectors.
    pub fn element(&self, c_count: usize, d_count: usize, lo_count: usize, ph_count: usize) -> Complex64 {
        let n = c_count + d_count;
        if n != lo_count + ph_count {
            return ZERO;
        }
        assert!(n <= self.max_total(), "photon sector {n} was not precomputed");
        self.blocks[n][c_count * (n + 1) + lo_count]
    }
}

fn ladder_blocks(theta: f64, max_total: usize) -> Vec<Vec<Complex64>> {
    let t = math::cos(theta / 2.0);
    let r = math::sin(theta / 2.0);
    let ir = Complex64::new(0.0, r);
    let mut blocks: Vec<Vec<Complex64>> = Vec::with_capacity(max_total + 1);
    blocks.push(vec![Complex64::new(1.0, 0.0)]);
    for n in 1..=max_total {
        let prev = &blocks[n - 1];
        let w = n; // width of the previous block
        let mut block = vec![ZERO; (n + 1) * (n + 1)];
        for j in 0..=n {
            // Column j of block n from column j-1 (oscillator photon added)
            // or, for j = 0, from column 0 (photon-arm photon added).
            let (src, lo_coef, d_coef, norm) = if j > 0 {
                (j - 1, Complex64::new(t, 0.0), ir, math::sqrt(j as f64))
            } else {
                (0, ir, Complex64::new(t, 0.0), math::sqrt(n as f64))
            };
            for k in 0..=n {
                let mut acc = ZERO;
                if k >= 1 {
                    acc += lo_coef * math::sqrt(k as f64) * prev[(k - 1) * w + src];
                }
                if k < n {
                    acc += d_coef * math::sqrt((n - k) as f64) * prev[k * w + src];
                }
                block[k * (n + 1) + j] = acc / norm;
            }
        }
        blocks.push(block);
    }
    blocks
}

fn square(m: &[Complex64], w: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; w * w];
    for i in 0..w {
        for k in 0..w {
            let a = m[i * w + k];
            for j in 0..w {
                out[i * w + j] += a * m[k * w + j];
            }
        }
    }
    out
}

/// Applies a beamsplitter to modes `lo` and `ph` of `state`.
///
/// The output keeps the input's index layout, with `lo` renamed to its `c`
/// port and `ph` to its `d` port (see [`ModeLabel::output_port`]). Output
/// amplitudes above either cutoff are dropped; the dropped probability is
/// returned and added to the state's leakage.
pub fn apply_beamsplitter(
    state: &StateVector,
    lo: ModeLabel,
    ph: ModeLabel,
    theta: f64,
) -> Result<(StateVector, f64)> {
    let pl = state.mode_position(lo).ok_or(Error::UnknownMode(lo))?;
    let pp = state.mode_position(ph).ok_or(Error::UnknownMode(ph))?;
    if pl == pp {
        return Err(Error::InvalidInput("beamsplitter needs two distinct modes"));
    }
    let cutoffs = state.cutoffs();
    let (nl, np) = (cutoffs[pl], cutoffs[pp]);
    let strides = state.strides();
    let (sl, sp) = (strides[pl], strides[pp]);
    let bs = Beamsplitter::new(theta, nl + np);

    let modes: Vec<ModeLabel> = state
        .modes()
        .iter()
        .map(|&m| if m == lo || m == ph { m.output_port() } else { m })
        .collect();
    let mut out = StateVector::zeros(&modes, cutoffs)?;
    let input = state.amplitudes();
    let mut dropped = 0.0;
    let mut column = Vec::with_capacity(nl + np + 1);

    let (rl, rp) = (nl + 1, np + 1);
    let output = out.amplitudes_mut();
    for base in 0..input.len() {
        if (base / sl) % rl != 0 || (base / sp) % rp != 0 {
            continue;
        }
        for n in 0..=nl + np {
            let jlo = n.saturating_sub(np);
            let jhi = n.min(nl);
            column.clear();
            column.extend((jlo..=jhi).map(|j| input[base + j * sl + (n - j) * sp]));
            if column.iter().all(|a| a.re == 0.0 && a.im == 0.0) {
                continue;
            }
            let block = &bs.blocks[n];
            for k in 0..=n {
                let row = &block[k * (n + 1)..(k + 1) * (n + 1)];
                let acc: Complex64 = row[jlo..=jhi]
                    .iter()
                    .zip(&column)
                    .map(|(u, a)| u * a)
                    .sum();
                if k >= jlo && k <= jhi {
                    output[base + k * sl + (n - k) * sp] = acc;
                } else {
                    dropped += acc.norm_sqr();
                }
            }
        }
    }
    out.set_leakage(state.leakage() + dropped);
    Ok((out, dropped))
}

/// Amplitude `<c_count, d_count| U(theta) |state>` for a two-mode state over
/// `(lo, ph)`, computed from the single photon-number sector it lives in.
pub fn output_amplitude(
    state: &StateVector,
    lo: ModeLabel,
    ph: ModeLabel,
    theta: f64,
    c_count: usize,
    d_count: usize,
) -> Result<Complex64> {
    if state.modes().len() != 2 {
        return Err(Error::InvalidInput("sector projection needs a two-mode state"));
    }
    let pl = state.mode_position(lo).ok_or(Error::UnknownMode(lo))?;
    let pp = state.mode_position(ph).ok_or(Error::UnknownMode(ph))?;
    let n = c_count + d_count;
    let bs = Beamsplitter::new(theta, n);
    let (nl, np) = (state.cutoffs()[pl], state.cutoffs()[pp]);
    let mut acc = ZERO;
    let mut counts = [0usize; 2];
    for j in n.saturating_sub(np)..=n.min(nl) {
        counts[pl] = j;
        counts[pp] = n - j;
        acc += bs.element(c_count, d_count, j, n - j) * state.amplitude_of(&counts[..].into())?;
    }
    Ok(acc)
}

/// Oscillator amplitudes, phases and truncation policy of one run.
///
/// The phase argument of the closed-form expressions in
/// [`analytic`](crate::analytic) is `phi2 - phi1` under this module's
/// beamsplitter convention; see [`closed_form_dphi`](Self::closed_form_dphi).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub alpha1: f64,
    pub alpha2: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub cutoff: CutoffSpec,
}

impl ExperimentConfig {
    /// Configuration with both oscillator magnitudes set to `alpha`, cutoff
    /// sized from `tail_eps`.
    pub fn symmetric(alpha: f64, phi1: f64, phi2: f64, tail_eps: f64) -> Self {
        Self::asymmetric(alpha, alpha, phi1, phi2, tail_eps)
    }

    pub fn asymmetric(alpha1: f64, alpha2: f64, phi1: f64, phi2: f64, tail_eps: f64) -> Self {
        let intensity = (alpha1 * alpha1).max(alpha2 * alpha2);
        ExperimentConfig {
            alpha1,
            alpha2,
            phi1,
            phi2,
            cutoff: CutoffSpec::for_intensity(intensity, tail_eps),
        }
    }

    /// Symmetric configuration reproducing a closed-form point with intensity
    /// `alpha_sq` and phase argument `dphi`: `phi1 = 0`, `phi2 = dphi`.
    pub fn from_closed_form(alpha_sq: f64, dphi: f64, tail_eps: f64) -> Self {
        Self::symmetric(math::sqrt(alpha_sq), 0.0, dphi, tail_eps)
    }

    /// `phi1 - phi2`, the oscillator phase difference between the stations.
    pub fn delta_phi(&self) -> f64 {
        self.phi1 - self.phi2
    }

    /// Phase argument entering the closed-form joint probability.
    pub fn closed_form_dphi(&self) -> f64 {
        self.phi2 - self.phi1
    }

    pub fn with_cutoff(mut self, cutoff: CutoffSpec) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn lo_amplitude1(&self) -> Complex64 {
        math::cis(self.phi1) * self.alpha1
    }

    pub fn lo_amplitude2(&self) -> Complex64 {
        math::cis(self.phi2) * self.alpha2
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha1, self.alpha2, self.phi1, self.phi2]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidInput("configuration values must be finite"));
        }
        if self.alpha1 < 0.0 || self.alpha2 < 0.0 {
            return Err(Error::InvalidInput("oscillator magnitudes must be non-negative"));
        }
        if self.cutoff.max_photons == 0 {
            return Err(Error::InvalidInput("cutoff must leave room for one photon"));
        }
        Ok(())
    }
}

/// Pre-network mode order.
pub const INPUT_MODES: [ModeLabel; 4] = [ModeLabel::A1, ModeLabel::B1, ModeLabel::A2, ModeLabel::B2];
/// Post-network mode order.
pub const OUTPUT_MODES: [ModeLabel; 4] = [ModeLabel::C1, ModeLabel::D1, ModeLabel::C2, ModeLabel::D2];

/// `|a1 e^{i phi1}>_{a1} (|0,1> + i|1,0>)_{b1 b2} / sqrt 2 |a2 e^{i phi2}>_{a2}`
/// in mode order `(a1, b1, a2, b2)`.
pub fn build_input_state(config: &ExperimentConfig) -> Result<StateVector> {
    config.validate()?;
    let n = config.cutoff.max_photons;
    let lo1 = coherent_state(ModeLabel::A1, config.lo_amplitude1(), n)?;
    let lo2 = coherent_state(ModeLabel::A2, config.lo_amplitude2(), n)?;
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut photon = StateVector::zeros(&[ModeLabel::B1, ModeLabel::B2], &[n, n])?;
    let i01 = photon.index_of(&[0, 1].into())?;
    let i10 = photon.index_of(&[1, 0].into())?;
    photon.amplitudes_mut()[i01] = Complex64::new(h, 0.0);
    photon.amplitudes_mut()[i10] = Complex64::new(0.0, h);
    let product = tensor(&[lo1, photon, lo2])?;
    permute_modes(&product, &INPUT_MODES)
}

/// Reorders the modes of a state.
pub fn permute_modes(state: &StateVector, order: &[ModeLabel]) -> Result<StateVector> {
    if order.len() != state.modes().len() {
        return Err(Error::ShapeMismatch);
    }
    let positions = order
        .iter()
        .map(|&m| state.mode_position(m).ok_or(Error::UnknownMode(m)))
        .collect::<Result<Vec<_>>>()?;
    let cutoffs: Vec<usize> = positions.iter().map(|&p| state.cutoffs()[p]).collect();
    let mut out = StateVector::zeros(order, &cutoffs)?;
    let out_strides = out.strides();
    let amps = state.amplitudes();
    let targets = out.amplitudes_mut();
    let mut counts = vec![0usize; order.len()];
    for (i, &a) in amps.iter().enumerate() {
        let occ = state.occupation_at(i);
        for (slot, &p) in counts.iter_mut().zip(&positions) {
            *slot = occ.counts()[p];
        }
        let j: usize = counts.iter().zip(&out_strides).map(|(c, s)| c * s).sum();
        targets[j] = a;
    }
    out.set_leakage(state.leakage());
    Ok(out)
}

/// Sends a pre-network state through BS1 (angle `xi` on `a1, b1`) and BS2
/// (angle `eta` on `a2, b2`). Output modes are `(c1, d1, c2, d2)`.
///
/// Every cutoff is raised by one first, so a station holding a full
/// oscillator register plus the source photon is transformed without
/// dropping anything. Whatever a splitter still has to drop is added to the
/// state's leakage.
pub fn propagate(state: &StateVector, xi: f64, eta: f64) -> Result<StateVector> {
    if state.modes() != INPUT_MODES {
        return Err(Error::InvalidInput("propagation expects modes (a1, b1, a2, b2)"));
    }
    let room: Vec<usize> = state.cutoffs().iter().map(|n| n + 1).collect();
    let state = state.padded(&room)?;
    let (s, _) = apply_beamsplitter(&state, ModeLabel::A1, ModeLabel::B1, xi)?;
    let (s, _) = apply_beamsplitter(&s, ModeLabel::A2, ModeLabel::B2, eta)?;
    Ok(s)
}

/// Builds the input state for `config` and propagates it.
pub fn run_network(config: &ExperimentConfig, xi: f64, eta: f64) -> Result<StateVector> {
    propagate(&build_input_state(config)?, xi, eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{fock_basis_state, inner, ModeLabel::*};
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn blocks_are_unitary() {
        for &theta in &[0.0, 0.3, FRAC_PI_2, 2.0, 5.9] {
            let bs = Beamsplitter::new(theta, 60);
            for n in 0..=60 {
                let b = &bs.blocks[n];
                let w = n + 1;
                let mut worst = 0.0_f64;
                for j1 in 0..w {
                    for j2 in 0..w {
                        let dot: Complex64 = (0..w).map(|k| b[k * w + j1].conj() * b[k * w + j2]).sum();
                        let expect = if j1 == j2 { 1.0 } else { 0.0 };
                        worst = worst.max((dot - c(expect, 0.0)).norm());
                    }
                }
                assert!(worst < 1e-12, "theta {theta} n {n} err {worst:e}");
            }
        }
    }

    #[test]
    fn zero_angle_is_relabel() {
        let cfg = ExperimentConfig::symmetric(0.8, 0.4, 1.1, 1e-12);
        let input = build_input_state(&cfg).unwrap();
        let (out, dropped) = apply_beamsplitter(&input, A1, B1, 0.0).unwrap();
        assert_eq!(out.modes(), &[C1, D1, A2, B2]);
        assert_eq!(dropped, 0.0);
        for (a, b) in out.amplitudes().iter().zip(input.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn single_photon_half_splitter() {
        let s = fock_basis_state(&[A1, B1], &[0, 1].into(), 3).unwrap();
        let (out, dropped) = apply_beamsplitter(&s, A1, B1, FRAC_PI_2).unwrap();
        assert_eq!(dropped, 0.0);
        let at_c = out.amplitude_of(&[1, 0].into()).unwrap();
        let at_d = out.amplitude_of(&[0, 1].into()).unwrap();
        assert!((at_c - c(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((at_d - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hong_ou_mandel_dip() {
        let s = fock_basis_state(&[A1, B1], &[1, 1].into(), 2).unwrap();
        let (out, _) = apply_beamsplitter(&s, A1, B1, FRAC_PI_2).unwrap();
        assert!(out.amplitude_of(&[1, 1].into()).unwrap().norm() < 1e-14);
        assert!((out.amplitude_of(&[2, 0].into()).unwrap().norm_sqr() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn coherent_input_splits_into_coherent_outputs() {
        let theta = 1.3;
        let n = 14;
        let beta = c(1.0, 0.0);
        let lo = coherent_state(A1, beta, n).unwrap();
        let vac = fock_basis_state(&[B1], &[0].into(), n).unwrap();
        let (out, _) = apply_beamsplitter(&tensor(&[lo, vac]).unwrap(), A1, B1, theta).unwrap();

        let t = (theta / 2.0).cos();
        let r = (theta / 2.0).sin();
        let ec = coherent_state(C1, beta * t, n).unwrap();
        let ed = coherent_state(D1, beta * c(0.0, r), n).unwrap();
        let expected = tensor(&[ec, ed]).unwrap();
        for (i, (a, b)) in out.amplitudes().iter().zip(expected.amplitudes()).enumerate() {
            // outputs above the input sector ceiling are discarded
            if out.occupation_at(i).total() <= n {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn inverse_angle_undoes_splitter() {
        let cfg = ExperimentConfig::symmetric(1.0, 0.2, -0.7, 1e-12);
        let input = build_input_state(&cfg).unwrap();
        let (mid, _) = apply_beamsplitter(&input, A1, B1, 0.9).unwrap();
        let (back, _) = apply_beamsplitter(&mid, C1, D1, -0.9).unwrap();
        let back = back.relabeled(&INPUT_MODES).unwrap();
        assert!(back.distance(&input).unwrap() < 1e-6);
        // exact away from the truncation edge
        for (i, (a, b)) in back.amplitudes().iter().zip(input.amplitudes()).enumerate() {
            let occ = input.occupation_at(i);
            if occ.counts()[0] + occ.counts()[1] < cfg.cutoff.max_photons {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn unknown_modes_rejected() {
        let s = fock_basis_state(&[A1, B1], &[0, 1].into(), 2).unwrap();
        assert_eq!(apply_beamsplitter(&s, A2, B1, 0.1).unwrap_err(), Error::UnknownMode(A2));
        assert!(apply_beamsplitter(&s, A1, A1, 0.1).is_err());
    }

    #[test]
    fn input_state_with_vacuum_oscillators() {
        let cfg = ExperimentConfig::symmetric(0.0, 0.0, 0.0, 1e-12);
        let s = build_input_state(&cfg).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((s.amplitude_of(&[0, 0, 0, 1].into()).unwrap() - c(h, 0.0)).norm() < 1e-15);
        assert!((s.amplitude_of(&[0, 1, 0, 0].into()).unwrap() - c(0.0, h)).norm() < 1e-15);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn input_state_amplitudes() {
        let cfg = ExperimentConfig::symmetric(1.0, 0.0, 0.0, 1e-12);
        assert_eq!(cfg.cutoff.max_photons, 14);
        let s = build_input_state(&cfg).unwrap();
        // c_0^2 / sqrt 2 and c_1^2 / sqrt 2 with c_0 = c_1 = e^{-1/2}
        let expect = 0.260_130_047_511_444_45;
        assert!((s.amplitude_of(&[0, 0, 0, 1].into()).unwrap().re - expect).abs() < 1e-15);
        assert!((s.amplitude_of(&[1, 0, 1, 1].into()).unwrap().re - expect).abs() < 1e-15);
        let tail = 1.0 - s.norm_sqr();
        assert!(tail > 0.0 && tail < 2e-12);
        assert!((s.leakage() - tail).abs() < 1e-14);
    }

    #[test]
    fn network_preserves_norm() {
        let cfg = ExperimentConfig::symmetric(1.0, 0.3, 1.2, 1e-12);
        let input = build_input_state(&cfg).unwrap();
        let out = run_network(&cfg, 2.1, 0.6).unwrap();
        assert_eq!(out.modes(), &OUTPUT_MODES);
        // the headroom keeps every amplitude of the physical input
        assert_eq!(out.leakage(), input.leakage());
        assert!((out.norm_sqr() - input.norm_sqr()).abs() < 1e-13);
        assert!(input.norm_sqr() - out.norm_sqr() < 1e-10);
    }

    #[test]
    fn network_at_zero_angles_relabels() {
        let cfg = ExperimentConfig::symmetric(0.7, 0.0, 0.5, 1e-12);
        let input = build_input_state(&cfg).unwrap();
        let out = run_network(&cfg, 0.0, 0.0).unwrap();
        let n = cfg.cutoff.max_photons + 1;
        let padded = input.padded(&[n; 4]).unwrap();
        assert!(out.relabeled(&INPUT_MODES).unwrap().distance(&padded).unwrap() < 1e-15);
    }

    #[test]
    fn single_photon_through_alice_station() {
        let cfg = ExperimentConfig::symmetric(0.0, 0.0, 0.0, 1e-12);
        let out = run_network(&cfg, FRAC_PI_2, 0.0).unwrap();
        let h = FRAC_1_SQRT_2;
        // i|1,0>_{b1 b2}/sqrt2 -> i (i|1,0> + |0,1>)_{c1 d1} / 2
        let at_c1 = out.amplitude_of(&[1, 0, 0, 0].into()).unwrap();
        let at_d1 = out.amplitude_of(&[0, 1, 0, 0].into()).unwrap();
        let bob = out.amplitude_of(&[0, 0, 0, 1].into()).unwrap();
        assert!((at_c1 - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((at_d1 - c(0.0, 0.5)).norm() < 1e-15);
        assert!((bob - c(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sector_projection_matches_full_transform() {
        let beta = c(0.6, -0.9);
        let n = 16;
        let lo = coherent_state(A1, beta, n).unwrap();
        let one = fock_basis_state(&[B1], &[1].into(), n).unwrap();
        let s = tensor(&[lo, one]).unwrap();
        let (full, _) = apply_beamsplitter(&s, A1, B1, 2.4).unwrap();
        for &(k, l) in &[(1, 0), (0, 1), (2, 1), (3, 0)] {
            let direct = output_amplitude(&s, A1, B1, 2.4, k, l).unwrap();
            let fromfull = full.amplitude_of(&[k, l].into()).unwrap();
            assert!((direct - fromfull).norm() < 1e-15);
        }
    }

    #[test]
    fn permutation_roundtrip() {
        let cfg = ExperimentConfig::symmetric(0.5, 0.1, 0.2, 1e-8);
        let s = build_input_state(&cfg).unwrap();
        let p = permute_modes(&s, &[B2, A1, A2, B1]).unwrap();
        let back = permute_modes(&p, &INPUT_MODES).unwrap();
        assert_eq!(back, s);
        assert_eq!(
            p.amplitude_of(&[1, 0, 0, 0].into()).unwrap(),
            s.amplitude_of(&[0, 0, 0, 1].into()).unwrap()
        );
        assert!((inner(&s, &s).unwrap().re - inner(&p, &p).unwrap().re).abs() < 1e-15);
    }

    #[test]
    fn phase_conventions() {
        let cfg = ExperimentConfig::symmetric(1.0, 0.25, 1.0, 1e-12);
        assert_eq!(cfg.delta_phi(), -0.75);
        assert_eq!(cfg.closed_form_dphi(), 0.75);
        let cf = ExperimentConfig::from_closed_form(1.0, PI / 2.0, 1e-12);
        assert_eq!(cf.phi1, 0.0);
        assert_eq!(cf.closed_form_dphi(), PI / 2.0);
    }
}
