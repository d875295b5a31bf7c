//! Photon-counting statistics of the favorable event.
//!
//! Each station reports `-1` when its `c` detector sees exactly one photon and
//! its `d` detector none, and `+1` otherwise. The `+1` outcome is the
//! complement of the favorable projector and is never enumerated.

use num_complex::Complex64;

use crate::fock::{coherent_state, fock_basis_state, tensor, ModeLabel, StateVector};
use crate::optics::{output_amplitude, OUTPUT_MODES};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Station {
    Alice,
    Bob,
}

impl Station {
    /// `(c, d)` detector modes owned by the station.
    pub fn modes(self) -> (ModeLabel, ModeLabel) {
        match self {
            Station::Alice => (ModeLabel::C1, ModeLabel::D1),
            Station::Bob => (ModeLabel::C2, ModeLabel::D2),
        }
    }

    /// Mode positions in the post-network order `(c1, d1, c2, d2)`.
    fn positions(self) -> (usize, usize) {
        match self {
            Station::Alice => (0, 1),
            Station::Bob => (2, 3),
        }
    }
}

/// Dichotomic measurement result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// One photon at `c`, none at `d`.
    Favorable,
    Other,
}

impl Outcome {
    pub fn from_counts(c: usize, d: usize) -> Self {
        if c == 1 && d == 0 {
            Outcome::Favorable
        } else {
            Outcome::Other
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Outcome::Favorable => -1,
            Outcome::Other => 1,
        }
    }
}

fn check_output_modes(state: &StateVector) -> Result<()> {
    if state.modes() != OUTPUT_MODES {
        return Err(Error::WrongModeSet);
    }
    Ok(())
}

/// Sesquilinear pieces of `<bra| A ⊗ B |ket>` with `A = 1 - 2 Π_A`,
/// `B = 1 - 2 Π_B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectorElements {
    pub overlap: Complex64,
    pub alice: Complex64,
    pub bob: Complex64,
    pub joint: Complex64,
}

impl ProjectorElements {
    pub fn correlator(&self) -> Complex64 {
        self.overlap - 2.0 * self.alice - 2.0 * self.bob + 4.0 * self.joint
    }
}

/// `<bra|X|ket>` for `X` in `{1, Π_A, Π_B, Π_A Π_B}`, summed over the dense
/// index with the free modes marginalized.
pub fn projector_elements(bra: &StateVector, ket: &StateVector) -> Result<ProjectorElements> {
    check_output_modes(bra)?;
    check_output_modes(ket)?;
    if !bra.same_shape(ket) {
        return Err(Error::ShapeMismatch);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut e = ProjectorElements {
        overlap: zero,
        alice: zero,
        bob: zero,
        joint: zero,
    };
    for (i, (b, k)) in bra.amplitudes().iter().zip(ket.amplitudes()).enumerate() {
        let term = b.conj() * k;
        if term.re == 0.0 && term.im == 0.0 {
            continue;
        }
        e.overlap += term;
        let occ = bra.occupation_at(i);
        let n = occ.counts();
        let fa = Outcome::from_counts(n[0], n[1]) == Outcome::Favorable;
        let fb = Outcome::from_counts(n[2], n[3]) == Outcome::Favorable;
        if fa {
            e.alice += term;
        }
        if fb {
            e.bob += term;
        }
        if fa && fb {
            e.joint += term;
        }
    }
    Ok(e)
}

/// Probability that `station` registers the favorable event.
pub fn station_favorable_prob(state: &StateVector, station: Station) -> Result<f64> {
    check_output_modes(state)?;
    let (pc, pd) = station.positions();
    let strides = state.strides();
    let amps = state.amplitudes();
    let mut p = 0.0;
    for (i, a) in amps.iter().enumerate() {
        let cutoffs = state.cutoffs();
        let c = (i / strides[pc]) % (cutoffs[pc] + 1);
        let d = (i / strides[pd]) % (cutoffs[pd] + 1);
        if c == 1 && d == 0 {
            p += a.norm_sqr();
        }
    }
    Ok(p)
}

/// Probability that both stations register the favorable event.
pub fn joint_favorable_prob(state: &StateVector) -> Result<f64> {
    check_output_modes(state)?;
    let idx = state.index_of(&[1, 0, 1, 0].into())?;
    Ok(state.amplitudes()[idx].norm_sqr())
}

/// Favorable-event statistics of one post-network state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectionStats {
    pub alice: f64,
    pub bob: f64,
    pub joint: f64,
}

impl DetectionStats {
    pub fn measure(state: &StateVector) -> Result<Self> {
        Ok(DetectionStats {
            alice: station_favorable_prob(state, Station::Alice)?,
            bob: station_favorable_prob(state, Station::Bob)?,
            joint: joint_favorable_prob(state)?,
        })
    }

    /// `E = 1 - 2 p_A - 2 p_B + 4 p_AB`.
    pub fn correlator(&self) -> f64 {
        1.0 - 2.0 * self.alice - 2.0 * self.bob + 4.0 * self.joint
    }

    /// `P(i, j)` for `i, j` in `{-1, +1}`, with the `+1` events as complements.
    pub fn outcome_probability(&self, alice: i8, bob: i8) -> f64 {
        match (alice, bob) {
            (-1, -1) => self.joint,
            (-1, 1) => self.alice - self.joint,
            (1, -1) => self.bob - self.joint,
            (1, 1) => 1.0 - self.alice - self.bob + self.joint,
            _ => panic!("outcomes are -1 or +1"),
        }
    }
}

/// Correlator `<A ⊗ B>` of a post-network state.
pub fn correlator(state: &StateVector) -> Result<f64> {
    Ok(DetectionStats::measure(state)?.correlator())
}

/// Favorable-event amplitudes of one station, `<1,0|U(theta)|lo> ⊗ |arm>`,
/// for the photon arm empty and holding one photon.
///
/// Computed on the station's own two-mode truncated Fock space; a
/// beamsplitter conserves photon number, so only the one-photon sector of the
/// input contributes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationAmplitudes {
    pub arm_empty: Complex64,
    pub arm_photon: Complex64,
}

impl StationAmplitudes {
    pub fn compute(lo_amplitude: Complex64, theta: f64, cutoff: usize) -> Result<Self> {
        let (lo, arm) = (ModeLabel::A1, ModeLabel::B1);
        let coh = coherent_state(lo, lo_amplitude, cutoff)?;
        let empty = tensor(&[coh.clone(), fock_basis_state(&[arm], &[0].into(), cutoff)?])?;
        let photon = tensor(&[coh, fock_basis_state(&[arm], &[1].into(), cutoff)?])?;
        Ok(StationAmplitudes {
            arm_empty: output_amplitude(&empty, lo, arm, theta, 1, 0)?,
            arm_photon: output_amplitude(&photon, lo, arm, theta, 1, 0)?,
        })
    }

    /// Marginal favorable probability: the photon is in this station's arm
    /// with probability one half.
    pub fn local_prob(&self) -> f64 {
        0.5 * (self.arm_empty.norm_sqr() + self.arm_photon.norm_sqr())
    }
}

/// Joint favorable probability assembled from per-station amplitudes of the
/// source state `(|0,1> + i|1,0>)_{b1 b2} / sqrt 2`.
pub fn joint_from_stations(alice: &StationAmplitudes, bob: &StationAmplitudes) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let amp = (alice.arm_empty * bob.arm_photon + i * alice.arm_photon * bob.arm_empty)
        * core::f64::consts::FRAC_1_SQRT_2;
    amp.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeLabel::*;
    use crate::optics::{run_network, ExperimentConfig};
    use core::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn vacuum_has_no_favorable_events() {
        let vac = fock_basis_state(&OUTPUT_MODES, &[0, 0, 0, 0].into(), 2).unwrap();
        let stats = DetectionStats::measure(&vac).unwrap();
        assert_eq!(stats.alice, 0.0);
        assert_eq!(stats.bob, 0.0);
        assert_eq!(stats.joint, 0.0);
        assert_eq!(correlator(&vac).unwrap(), 1.0);
    }

    #[test]
    fn wrong_modes_rejected() {
        let s = fock_basis_state(&[A1, B1, A2, B2], &[0, 0, 0, 0].into(), 2).unwrap();
        assert_eq!(station_favorable_prob(&s, Station::Alice).unwrap_err(), Error::WrongModeSet);
        assert_eq!(joint_favorable_prob(&s).unwrap_err(), Error::WrongModeSet);
    }

    #[test]
    fn single_photon_reflection() {
        let cfg = ExperimentConfig::symmetric(0.0, 0.0, 0.0, 1e-12);
        let out = run_network(&cfg, FRAC_PI_2, 0.0).unwrap();
        let pa = station_favorable_prob(&out, Station::Alice).unwrap();
        assert!((pa - 0.25).abs() < 1e-15);
        // one photon never fires both stations
        for &(x, y) in &[(0.3, 2.0), (FRAC_PI_2, FRAC_PI_2), (5.0, 1.0)] {
            let out = run_network(&cfg, x, y).unwrap();
            assert_eq!(joint_favorable_prob(&out).unwrap(), 0.0);
        }
        let out = run_network(&cfg, 0.0, 0.0).unwrap();
        assert!((correlator(&out).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn marginal_with_oscillator() {
        // (1/2) e^{-1} (cos²(π/4) + sin²(π/4)) = e^{-1}/2
        let cfg = ExperimentConfig::symmetric(1.0, 0.0, 0.0, 1e-12);
        let out = run_network(&cfg, FRAC_PI_2, 0.4).unwrap();
        let pa = station_favorable_prob(&out, Station::Alice).unwrap();
        assert!((pa - 0.183_939_720_585_721_16).abs() < 1e-12);
    }

    #[test]
    fn joint_depends_on_phase_argument() {
        // closed-form argument +π/2 -> 0, -π/2 -> e^{-2}/2
        let plus = ExperimentConfig::from_closed_form(1.0, FRAC_PI_2, 1e-12);
        let out = run_network(&plus, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(joint_favorable_prob(&out).unwrap() < 1e-15);

        let minus = ExperimentConfig::from_closed_form(1.0, -FRAC_PI_2, 1e-12);
        let out = run_network(&minus, FRAC_PI_2, FRAC_PI_2).unwrap();
        let p = joint_favorable_prob(&out).unwrap();
        assert!((p - 0.067_667_641_618_306_35).abs() < 1e-10);
    }

    #[test]
    fn outcome_partition() {
        let cfg = ExperimentConfig::symmetric(0.9, 0.3, 2.0, 1e-12);
        let out = run_network(&cfg, 1.1, 2.9).unwrap();
        let s = DetectionStats::measure(&out).unwrap();
        let mut total = 0.0;
        let mut e = 0.0;
        for &i in &[-1i8, 1] {
            for &j in &[-1i8, 1] {
                let p = s.outcome_probability(i, j);
                assert!(p >= 0.0);
                total += p;
                e += f64::from(i * j) * p;
            }
        }
        assert!((total - 1.0).abs() < 1e-15);
        assert!((e - s.correlator()).abs() < 1e-12);
        assert!(s.joint <= s.alice.min(s.bob));
    }

    #[test]
    fn projector_elements_match_probabilities() {
        let cfg = ExperimentConfig::symmetric(0.7, 1.0, 0.2, 1e-12);
        let out = run_network(&cfg, 0.5, PI - 0.2).unwrap();
        let s = DetectionStats::measure(&out).unwrap();
        let e = projector_elements(&out, &out).unwrap();
        assert!((e.alice.re - s.alice).abs() < 1e-14);
        assert!((e.bob.re - s.bob).abs() < 1e-14);
        assert!((e.joint.re - s.joint).abs() < 1e-15);
        assert!((e.overlap.re - out.norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn station_amplitudes_match_dense_network() {
        let cfg = ExperimentConfig::symmetric(1.3, 0.4, 2.2, 1e-12);
        let (xi, eta) = (0.8, 4.1);
        let out = run_network(&cfg, xi, eta).unwrap();
        let dense = DetectionStats::measure(&out).unwrap();
        let n = cfg.cutoff.max_photons;
        let a = StationAmplitudes::compute(cfg.lo_amplitude1(), xi, n).unwrap();
        let b = StationAmplitudes::compute(cfg.lo_amplitude2(), eta, n).unwrap();
        assert!((a.local_prob() - dense.alice).abs() < 1e-11);
        assert!((b.local_prob() - dense.bob).abs() < 1e-11);
        assert!((joint_from_stations(&a, &b) - dense.joint).abs() < 1e-15);
    }

    #[test]
    fn outcome_labels() {
        assert_eq!(Outcome::from_counts(1, 0).value(), -1);
        assert_eq!(Outcome::from_counts(1, 1).value(), 1);
        assert_eq!(Outcome::from_counts(0, 0).value(), 1);
        assert_eq!(Outcome::from_counts(2, 0).value(), 1);
    }
}
