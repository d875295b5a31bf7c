//! CH and CHSH values, the entangled/residual split of the input state and
//! the two-qubit CHSH maximum of the entangled component.
//!
//! Settings follow the pattern `CHSH = E(a,b) + E(a',b) - E(a,b') + E(a',b')`
//! and `CH = P(a,b) + P(a',b) - P(a,b') + P(a',b') - P(a') - P(b)`, where
//! `P(x,y)` is the joint favorable probability and `P(x)`, `P(y)` the station
//! marginals. With dichotomic outcomes the two satisfy `CHSH = 2 + 4 CH`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::detection::{joint_from_stations, projector_elements, DetectionStats, StationAmplitudes};
use crate::fock::{inner, StateVector};
use crate::linalg::{matmul, symmetric_eigenvalues, transpose, Mat3};
use crate::math;
use crate::optics::{apply_beamsplitter, build_input_state, propagate, ExperimentConfig, INPUT_MODES};
use crate::fock::ModeLabel;
use crate::{Error, Result};

/// Two settings per party.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl Settings {
    /// The evaluated pairs in the order `(a,b), (a',b), (a,b'), (a',b')`.
    pub fn pairs(&self) -> [(f64, f64); 4] {
        [
            (self.a, self.b),
            (self.a_prime, self.b),
            (self.a, self.b_prime),
            (self.a_prime, self.b_prime),
        ]
    }
}

/// Settings `ξ, ξ+π/2` for Alice and `η, η+π/2` for Bob.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SettingsQuadruple {
    pub xi: f64,
    pub eta: f64,
}

impl SettingsQuadruple {
    pub fn new(xi: f64, eta: f64) -> Self {
        SettingsQuadruple { xi, eta }
    }

    pub fn from_sum_difference(xi_plus_eta: f64, xi_minus_eta: f64) -> Self {
        SettingsQuadruple {
            xi: (xi_plus_eta + xi_minus_eta) / 2.0,
            eta: (xi_plus_eta - xi_minus_eta) / 2.0,
        }
    }

    pub fn settings(&self) -> Settings {
        Settings {
            a: self.xi,
            a_prime: self.xi + FRAC_PI_2,
            b: self.eta,
            b_prime: self.eta + FRAC_PI_2,
        }
    }
}

/// Detection statistics at the four setting pairs and the derived Bell values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellRecord {
    pub settings: Settings,
    /// Per-pair statistics in [`Settings::pairs`] order.
    pub stats: [DetectionStats; 4],
    /// `P(-1|a')`, averaged over the two pairs in which Alice uses `a'`.
    pub local_alice: f64,
    /// `P(-1|b)`, averaged over the two pairs in which Bob uses `b`.
    pub local_bob: f64,
    pub correlators: [f64; 4],
    pub ch: f64,
    pub chsh: f64,
}

impl BellRecord {
    pub fn from_stats(settings: Settings, stats: [DetectionStats; 4]) -> Self {
        let j = stats.map(|s| s.joint);
        let local_alice = 0.5 * (stats[1].alice + stats[3].alice);
        let local_bob = 0.5 * (stats[0].bob + stats[1].bob);
        let correlators = stats.map(|s| s.correlator());
        let ch = j[0] + j[1] - j[2] + j[3] - local_alice - local_bob;
        let chsh = correlators[0] + correlators[1] - correlators[2] + correlators[3];
        BellRecord {
            settings,
            stats,
            local_alice,
            local_bob,
            correlators,
            ch,
            chsh,
        }
    }

    pub fn joint(&self) -> [f64; 4] {
        self.stats.map(|s| s.joint)
    }

    /// `|CHSH - (2 + 4 CH)|`; nonzero only through signalling residue of the
    /// truncated numerics and rounding.
    pub fn identity_residual(&self) -> f64 {
        math::abs(self.chsh - (2.0 + 4.0 * self.ch))
    }
}

/// Brute-force record: the full four-mode state is propagated for every pair,
/// with the same headroom as [`propagate`].
pub fn bell_record(config: &ExperimentConfig, settings: &Settings) -> Result<BellRecord> {
    let input = build_input_state(config)?;
    let room: Vec<usize> = input.cutoffs().iter().map(|n| n + 1).collect();
    let input = input.padded(&room)?;
    let alice_a = apply_beamsplitter(&input, ModeLabel::A1, ModeLabel::B1, settings.a)?.0;
    let alice_ap = apply_beamsplitter(&input, ModeLabel::A1, ModeLabel::B1, settings.a_prime)?.0;
    let mut stats = [DetectionStats {
        alice: 0.0,
        bob: 0.0,
        joint: 0.0,
    }; 4];
    for (slot, (first, y)) in stats.iter_mut().zip([
        (&alice_a, settings.b),
        (&alice_ap, settings.b),
        (&alice_a, settings.b_prime),
        (&alice_ap, settings.b_prime),
    ]) {
        let out = apply_beamsplitter(first, ModeLabel::A2, ModeLabel::B2, y)?.0;
        *slot = DetectionStats::measure(&out)?;
    }
    Ok(BellRecord::from_stats(*settings, stats))
}

/// CH value (with full record) at a settings quadruple, brute force.
pub fn ch_value(config: &ExperimentConfig, quad: &SettingsQuadruple) -> Result<BellRecord> {
    bell_record(config, &quad.settings())
}

/// CHSH value (with full record) at a settings quadruple, brute force.
/// Identical record to [`ch_value`]; both Bell values are always filled.
pub fn chsh_value(config: &ExperimentConfig, quad: &SettingsQuadruple) -> Result<BellRecord> {
    ch_value(config, quad)
}

/// Record from per-station favorable amplitudes.
///
/// The source photon is in exactly one arm, so the four-mode amplitude of the
/// joint favorable event factorizes into station amplitudes. Each station
/// amplitude is a Fock-space computation on that station's two modes. This is
/// orders of magnitude cheaper than [`bell_record`] and agrees with it to
/// truncation accuracy.
pub fn factorized_record(config: &ExperimentConfig, settings: &Settings) -> Result<BellRecord> {
    config.validate()?;
    let n = config.cutoff.max_photons;
    let alice = [
        StationAmplitudes::compute(config.lo_amplitude1(), settings.a, n)?,
        StationAmplitudes::compute(config.lo_amplitude1(), settings.a_prime, n)?,
    ];
    let bob = [
        StationAmplitudes::compute(config.lo_amplitude2(), settings.b, n)?,
        StationAmplitudes::compute(config.lo_amplitude2(), settings.b_prime, n)?,
    ];
    let stat = |x: usize, y: usize| DetectionStats {
        alice: alice[x].local_prob(),
        bob: bob[y].local_prob(),
        joint: joint_from_stations(&alice[x], &bob[y]),
    };
    Ok(BellRecord::from_stats(
        *settings,
        [stat(0, 0), stat(1, 0), stat(0, 1), stat(1, 1)],
    ))
}

/// Entangled single-photon component and orthogonal residual of the input
/// state: `|Ψ> = c1 |ψ1> + sqrt(1 - c1²) |Λ>`.
#[derive(Clone, Debug)]
pub struct StateSplit {
    /// `α e^{-α²}`
    pub c1: f64,
    /// `(e^{iφ1}|1,0,0,1> + i e^{iφ2}|0,1,1,0>) / sqrt 2` over `(a1, b1, a2, b2)`.
    pub psi1: StateVector,
    pub lambda: StateVector,
    /// `sqrt(1 - α² e^{-2α²})`
    pub lambda_norm_coeff: f64,
    /// The input state the split was taken from.
    pub full: StateVector,
}

impl StateSplit {
    /// `c1 ψ1 + coeff Λ`.
    pub fn reconstruct(&self) -> Result<StateVector> {
        self.psi1
            .scaled(Complex64::new(self.c1, 0.0))
            .add_scaled(Complex64::new(self.lambda_norm_coeff, 0.0), &self.lambda)
    }
}

/// Splits the symmetric input state into its entangled component and residual.
pub fn split_state(config: &ExperimentConfig) -> Result<StateSplit> {
    if config.alpha1 != config.alpha2 {
        return Err(Error::AsymmetricAmplitudes {
            alpha1: config.alpha1,
            alpha2: config.alpha2,
        });
    }
    let alpha = config.alpha1;
    let full = build_input_state(config)?;
    let mut psi1 = StateVector::zeros(&INPUT_MODES, full.cutoffs())?;
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let i1001 = psi1.index_of(&[1, 0, 0, 1].into())?;
    let i0110 = psi1.index_of(&[0, 1, 1, 0].into())?;
    psi1.amplitudes_mut()[i1001] = math::cis(config.phi1) * h;
    psi1.amplitudes_mut()[i0110] = Complex64::new(0.0, 1.0) * math::cis(config.phi2) * h;

    let c1 = alpha * math::exp(-alpha * alpha);
    let lambda_norm_coeff = math::sqrt(1.0 - c1 * c1);
    let residual = full.add_scaled(Complex64::new(-c1, 0.0), &psi1)?;
    let mut lambda = residual.scaled(Complex64::new(1.0 / lambda_norm_coeff, 0.0));
    lambda.set_leakage(full.leakage());
    Ok(StateSplit {
        c1,
        psi1,
        lambda,
        lambda_norm_coeff,
        full,
    })
}

/// Sesquilinear CHSH combination `Σ ± <bra'|A⊗B|ket'>` after propagating both
/// pre-network states through the network at each setting pair.
pub fn chsh_matrix_element(bra: &StateVector, ket: &StateVector, settings: &Settings) -> Result<Complex64> {
    let signs = [1.0, 1.0, -1.0, 1.0];
    let mut total = Complex64::new(0.0, 0.0);
    for ((x, y), sign) in settings.pairs().into_iter().zip(signs) {
        let b = propagate(bra, x, y)?;
        let k = if core::ptr::eq(bra, ket) { b.clone() } else { propagate(ket, x, y)? };
        total += projector_elements(&b, &k)?.correlator() * sign;
    }
    Ok(total)
}

/// CHSH value `<c|O|c>` of a pre-network component state.
pub fn chsh_on_component(component: &StateVector, settings: &Settings) -> Result<f64> {
    Ok(chsh_matrix_element(component, component, settings)?.re)
}

/// Breakdown of the full-state CHSH value into the split's pieces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshDecomposition {
    /// `c1² CHSH(ψ1)`
    pub psi1_term: f64,
    /// `(1 - c1²) CHSH(Λ)`
    pub lambda_term: f64,
    /// `2 Re(c1 sqrt(1 - c1²) <ψ1|O|Λ>)`
    pub interference_term: f64,
    pub chsh_psi1: f64,
    pub chsh_lambda: f64,
    /// CHSH of the unsplit state.
    pub full: f64,
}

impl ChshDecomposition {
    pub fn sum(&self) -> f64 {
        self.psi1_term + self.lambda_term + self.interference_term
    }

    pub fn residual(&self) -> f64 {
        math::abs(self.sum() - self.full)
    }
}

pub fn chsh_decomposition(split: &StateSplit, settings: &Settings) -> Result<ChshDecomposition> {
    let chsh_psi1 = chsh_on_component(&split.psi1, settings)?;
    let chsh_lambda = chsh_on_component(&split.lambda, settings)?;
    let cross = chsh_matrix_element(&split.psi1, &split.lambda, settings)?;
    let full = chsh_on_component(&split.full, settings)?;
    let n = split.lambda_norm_coeff;
    Ok(ChshDecomposition {
        psi1_term: split.c1 * split.c1 * chsh_psi1,
        lambda_term: n * n * chsh_lambda,
        interference_term: 2.0 * split.c1 * n * cross.re,
        chsh_psi1,
        chsh_lambda,
        full,
    })
}

/// Station label of a pre-network occupation: `-1` when the station holds
/// exactly one photon (the favorable event is reachable), `+1` when the
/// station's photon count rules it out.
pub fn station_label(photons: usize) -> i8 {
    if photons == 1 {
        -1
    } else {
        1
    }
}

/// One amplitude of `|Λ>` with one station holding a single photon and the
/// other more than one.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossTerm {
    /// Counts over `(a1, b1, a2, b2)`.
    pub occupation: [usize; 4],
    pub amplitude: Complex64,
    pub alice_label: i8,
    pub bob_label: i8,
}

impl CrossTerm {
    pub fn probability(&self) -> f64 {
        self.amplitude.norm_sqr()
    }
}

/// Largest cross terms of `|Λ>` by weight; ties keep index order.
pub fn lambda_cross_terms(split: &StateSplit, limit: usize) -> Vec<CrossTerm> {
    let mut terms: Vec<CrossTerm> = split
        .lambda
        .iter()
        .filter_map(|(occ, amp)| {
            let n = occ.counts();
            let (alice, bob) = (n[0] + n[1], n[2] + n[3]);
            let crossing = (alice == 1 && bob > 1) || (bob == 1 && alice > 1);
            if !crossing || amp.norm_sqr() == 0.0 {
                return None;
            }
            Some(CrossTerm {
                occupation: [n[0], n[1], n[2], n[3]],
                amplitude: amp,
                alice_label: station_label(alice),
                bob_label: station_label(bob),
            })
        })
        .collect();
    terms.sort_by(|x, y| {
        y.probability()
            .partial_cmp(&x.probability())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    terms.truncate(limit);
    terms
}

type Mat2 = [[Complex64; 2]; 2];

fn pauli() -> [Mat2; 3] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [[[z, o], [o, z]], [[z, -i], [i, z]], [[o, z], [z, -o]]]
}

/// Spin correlation matrix `T_ij = <σ_i ⊗ σ_j>` of a normalized two-qubit
/// state with amplitudes ordered `|00>, |01>, |10>, |11>`.
pub fn correlation_matrix(q: &[Complex64; 4]) -> Mat3 {
    let s = pauli();
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    for a2 in 0..2 {
                        for b2 in 0..2 {
                            acc += q[2 * a + b].conj() * s[i][a][a2] * s[j][b][b2] * q[2 * a2 + b2];
                        }
                    }
                }
            }
            t[i][j] = acc.re;
        }
    }
    t
}

/// Maximum CHSH value over all qubit measurements: `2 sqrt(λ1 + λ2)` with
/// `λ1 ≥ λ2` the top eigenvalues of `TᵀT`.
pub fn horodecki_max_chsh(q: &[Complex64; 4]) -> f64 {
    let norm: f64 = q.iter().map(|a| a.norm_sqr()).sum();
    let q = q.map(|a| a / math::sqrt(norm));
    let t = correlation_matrix(&q);
    let ev = symmetric_eigenvalues(&matmul(&transpose(&t), &t));
    2.0 * math::sqrt((ev[0] + ev[1]).max(0.0))
}

/// Horodecki value of a pre-network state supported on one photon per
/// station, with `|1,0>` as logical 0 and `|0,1>` as logical 1 per station.
pub fn tsirelson_two_qubit(state: &StateVector) -> Result<f64> {
    if state.modes() != INPUT_MODES {
        return Err(Error::InvalidInput("expected modes (a1, b1, a2, b2)"));
    }
    let logical = [[1usize, 0], [0, 1]];
    let mut q = [Complex64::new(0.0, 0.0); 4];
    for (la, alice) in logical.iter().enumerate() {
        for (lb, bob) in logical.iter().enumerate() {
            q[2 * la + lb] = state.amplitude_of(&[alice[0], alice[1], bob[0], bob[1]].into())?;
        }
    }
    let inside: f64 = q.iter().map(|a| a.norm_sqr()).sum();
    let total = state.norm_sqr();
    let outside = total - inside;
    if inside == 0.0 || outside > 1e-12 * total {
        return Err(Error::NotLogicalSubspace {
            outside_weight: outside,
        });
    }
    Ok(horodecki_max_chsh(&q))
}

/// `|<a|b>|` helper used by the split checks.
pub fn overlap_magnitude(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(inner(a, b)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{ch_closed, ClosedFormPoint};
    use crate::fock::fock_basis_state;
    use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn paper_quad() -> SettingsQuadruple {
        SettingsQuadruple::from_sum_difference(PI, 3.0 * PI / 4.0)
    }

    #[test]
    fn vacuum_oscillators_at_zero_angles() {
        let cfg = ExperimentConfig::symmetric(0.0, 0.0, 0.0, 1e-12);
        let rec = ch_value(&cfg, &SettingsQuadruple::new(0.0, 0.0)).unwrap();
        assert!((rec.ch + 0.25).abs() < 1e-15);
        assert!((rec.chsh - 1.0).abs() < 1e-15);
        assert!(rec.identity_residual() < 1e-15);
    }

    #[test]
    fn paper_settings_record() {
        let cfg = ExperimentConfig::from_closed_form(1.0, FRAC_PI_2, 1e-12);
        let rec = chsh_value(&cfg, &paper_quad()).unwrap();
        assert!((rec.ch + 0.204_515_303_042_725_05).abs() < 1e-9);
        assert!((rec.chsh - 1.181_938_787_829_099_8).abs() < 1e-9);
        assert!(rec.identity_residual() < 1e-12);
        let fast = factorized_record(&cfg, &paper_quad().settings()).unwrap();
        assert!((fast.ch - rec.ch).abs() < 1e-11);
        assert!(fast.identity_residual() < 1e-15);
    }

    #[test]
    fn factorized_matches_closed_form() {
        for &(a2, xi, eta, dphi) in &[(0.3, 0.2, 1.7, 0.4), (2.5, 4.0, 5.5, -1.0), (1e-8, 3.0, 0.0, 2.0)] {
            let cfg = ExperimentConfig::from_closed_form(a2, dphi, 1e-12);
            let rec = factorized_record(&cfg, &SettingsQuadruple::new(xi, eta).settings()).unwrap();
            let p = ClosedFormPoint::new(xi, eta, dphi, a2);
            assert!((rec.ch - ch_closed(&p)).abs() < 1e-13);
        }
    }

    #[test]
    fn split_coefficients() {
        let cfg = ExperimentConfig::symmetric(1.0, 0.0, 0.0, 1e-12);
        let split = split_state(&cfg).unwrap();
        assert!((split.c1 - 0.367_879_441_171_442_3).abs() < 1e-15);
        let cross = split.lambda.amplitude_of(&[1, 0, 1, 1].into()).unwrap();
        assert!((cross.norm() - 0.279_747_781_715_660_5).abs() < 1e-12);
        assert!(overlap_magnitude(&split.psi1, &split.lambda).unwrap() < 1e-12);
        let rebuilt = split.reconstruct().unwrap();
        assert!(rebuilt.distance(&split.full).unwrap() < 1e-14);
    }

    #[test]
    fn split_without_oscillators() {
        let cfg = ExperimentConfig::symmetric(0.0, 0.0, 0.0, 1e-12);
        let split = split_state(&cfg).unwrap();
        assert_eq!(split.c1, 0.0);
        assert_eq!(split.lambda_norm_coeff, 1.0);
        assert!(split.lambda.distance(&split.full).unwrap() == 0.0);
    }

    #[test]
    fn split_requires_symmetry() {
        let cfg = ExperimentConfig::asymmetric(1.0, 0.5, 0.0, 0.0, 1e-12);
        assert!(matches!(split_state(&cfg), Err(Error::AsymmetricAmplitudes { .. })));
    }

    #[test]
    fn tsirelson_values() {
        let cfg = ExperimentConfig::symmetric(1.0, 0.3, 2.1, 1e-12);
        let split = split_state(&cfg).unwrap();
        assert!((tsirelson_two_qubit(&split.psi1).unwrap() - 2.0 * SQRT_2).abs() < 1e-12);

        let product = fock_basis_state(&INPUT_MODES, &[1, 0, 1, 0].into(), 1).unwrap();
        assert!((tsirelson_two_qubit(&product).unwrap() - 2.0).abs() < 1e-12);

        assert!(matches!(
            tsirelson_two_qubit(&split.lambda),
            Err(Error::NotLogicalSubspace { .. })
        ));
    }

    #[test]
    fn partially_entangled_state() {
        let n = (0.36_f64 + 0.5).sqrt();
        let q = [
            Complex64::new(0.0, 0.0),
            Complex64::new(FRAC_1_SQRT_2 / n, 0.0),
            Complex64::new(0.6 / n, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let v = horodecki_max_chsh(&q);
        assert!(v > 2.0 && v < 2.0 * SQRT_2);
        // frozen: 2 sqrt(1 + C²) with concurrence C = 2|ab|
        assert!((v - 2.809_625_732_193_294).abs() < 1e-12);
    }

    #[test]
    fn component_chsh_bounds() {
        let cfg = ExperimentConfig::symmetric(0.0, 0.0, 0.0, 1e-12);
        let s = build_input_state(&cfg).unwrap();
        let v = chsh_on_component(&s, &SettingsQuadruple::new(0.0, 0.0).settings()).unwrap();
        assert!((v - 1.0).abs() < 1e-15);

        let cfg = ExperimentConfig::symmetric(1.0, 0.0, FRAC_PI_2, 1e-12);
        let split = split_state(&cfg).unwrap();
        let v = chsh_on_component(&split.psi1, &paper_quad().settings()).unwrap();
        // the one-photon component saturates the quantum bound here
        assert!((v - 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn cross_terms_include_the_one_two_photon_term() {
        let cfg = ExperimentConfig::symmetric(1.0, 0.0, 0.0, 1e-12);
        let split = split_state(&cfg).unwrap();
        let terms = lambda_cross_terms(&split, 10);
        assert_eq!(terms.len(), 10);
        let t = terms.iter().find(|t| t.occupation == [1, 0, 1, 1]).unwrap();
        assert_eq!((t.alice_label, t.bob_label), (-1, 1));
        assert!((t.amplitude.norm() - 0.279_747_781_715_660_5).abs() < 1e-12);
        assert!(terms.windows(2).all(|w| w[0].probability() >= w[1].probability()));
    }
}
