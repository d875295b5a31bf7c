//! Closed-form detection probabilities, CH and CHSH values for the symmetric
//! configuration (equal oscillator magnitudes).
//!
//! These are evaluated independently of the Fock-space numerics and serve as
//! the second route in every cross-check.

use crate::math::{cos, exp, sin};

/// Arguments of the closed forms. `dphi` is the phase argument exactly as it
/// enters [`joint_prob_closed`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormPoint {
    pub xi: f64,
    pub eta: f64,
    pub dphi: f64,
    pub alpha_sq: f64,
}

impl ClosedFormPoint {
    pub fn new(xi: f64, eta: f64, dphi: f64, alpha_sq: f64) -> Self {
        debug_assert!(alpha_sq >= 0.0, "alpha_sq must be non-negative");
        ClosedFormPoint {
            xi,
            eta,
            dphi,
            alpha_sq,
        }
    }

    /// Point given by the sum and difference of the two angles.
    pub fn from_sum_difference(xi_plus_eta: f64, xi_minus_eta: f64, dphi: f64, alpha_sq: f64) -> Self {
        Self::new(
            (xi_plus_eta + xi_minus_eta) / 2.0,
            (xi_plus_eta - xi_minus_eta) / 2.0,
            dphi,
            alpha_sq,
        )
    }

    fn with_angles(&self, xi: f64, eta: f64) -> Self {
        ClosedFormPoint { xi, eta, ..*self }
    }
}

/// `P(-1,-1) = ¼ a² e^{-2a²} (1 - cos η cos ξ - sin η sin ξ sin Δφ)`
pub fn joint_prob_closed(p: &ClosedFormPoint) -> f64 {
    let a2 = p.alpha_sq;
    let v = 0.25 * a2 * exp(-2.0 * a2)
        * (1.0 - cos(p.eta) * cos(p.xi) - sin(p.eta) * sin(p.xi) * sin(p.dphi));
    debug_assert!((-1e-15..=1.0).contains(&v));
    v
}

/// `P(-1|x) = ½ e^{-a²} (a² cos²(x/2) + sin²(x/2))`
pub fn local_prob_closed(x: f64, alpha_sq: f64) -> f64 {
    let c = cos(x / 2.0);
    let s = sin(x / 2.0);
    0.5 * exp(-alpha_sq) * (alpha_sq * c * c + s * s)
}

/// Local probability with the `e^{-2a²}` prefactor. Kept only to quantify the
/// discrepancy against the brute-force numerics.
pub fn local_prob_double_exponent(x: f64, alpha_sq: f64) -> f64 {
    local_prob_closed(x, alpha_sq) * exp(-alpha_sq)
}

/// CH value at settings `(ξ, ξ+π/2) x (η, η+π/2)` in closed form.
pub fn ch_closed(p: &ClosedFormPoint) -> f64 {
    let a2 = p.alpha_sq;
    let ea = exp(a2);
    let d = p.xi - p.eta;
    0.25 * exp(-2.0 * a2)
        * (a2 * (1.0 + sin(p.dphi)) * (sin(d) - cos(d))
            + ea * (1.0 - a2) * (cos(p.eta) - sin(p.xi))
            + 2.0 * a2
            - 2.0 * ea * (a2 + 1.0))
}

/// The CH combination of the closed-form probabilities:
/// `P(ξ,η) + P(ξ',η) - P(ξ,η') + P(ξ',η') - P(ξ') - P(η)` with primes
/// denoting `+π/2`.
pub fn ch_assembled(p: &ClosedFormPoint) -> f64 {
    let h = core::f64::consts::FRAC_PI_2;
    let (x, y) = (p.xi, p.eta);
    joint_prob_closed(p) + joint_prob_closed(&p.with_angles(x + h, y))
        - joint_prob_closed(&p.with_angles(x, y + h))
        + joint_prob_closed(&p.with_angles(x + h, y + h))
        - local_prob_closed(x + h, p.alpha_sq)
        - local_prob_closed(y, p.alpha_sq)
}

/// `2 + 4 CH`.
pub fn chsh_closed(p: &ClosedFormPoint) -> f64 {
    2.0 + 4.0 * ch_closed(p)
}

/// CHSH written out directly rather than through the CH value.
pub fn chsh_expanded(p: &ClosedFormPoint) -> f64 {
    let a2 = p.alpha_sq;
    let ea = exp(a2);
    let d = p.xi - p.eta;
    2.0 + exp(-2.0 * a2)
        * (a2 * (1.0 + sin(p.dphi)) * (sin(d) - cos(d))
            + ea * (1.0 - a2) * (cos(p.eta) - sin(p.xi))
            + 2.0 * a2
            - 2.0 * ea * (a2 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn joint_examples() {
        assert_eq!(joint_prob_closed(&ClosedFormPoint::new(0.7, 1.9, 0.3, 0.0)), 0.0);
        let p = ClosedFormPoint::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, 1.0);
        assert!(joint_prob_closed(&p).abs() < 1e-17);
        let p = ClosedFormPoint::new(FRAC_PI_2, FRAC_PI_2, -FRAC_PI_2, 1.0);
        assert!((joint_prob_closed(&p) - 0.067_667_641_618_306_35).abs() < 1e-16);
    }

    #[test]
    fn local_examples() {
        assert_eq!(local_prob_closed(0.0, 0.0), 0.0);
        assert!((local_prob_closed(FRAC_PI_2, 0.0) - 0.25).abs() < 1e-16);
        assert!((local_prob_closed(FRAC_PI_2, 1.0) - 0.183_939_720_585_721_16).abs() < 1e-16);
        assert!((local_prob_double_exponent(FRAC_PI_2, 1.0) - 0.067_667_641_618_306_35).abs() < 1e-16);
    }

    #[test]
    fn ch_examples() {
        let p = ClosedFormPoint::new(0.0, 0.0, 0.4, 0.0);
        assert!((ch_closed(&p) + 0.25).abs() < 1e-16);
        assert!((chsh_closed(&p) - 1.0).abs() < 1e-15);
        assert!((chsh_expanded(&p) - 1.0).abs() < 1e-15);

        // frozen from a 50-digit evaluation
        let p = ClosedFormPoint::from_sum_difference(PI, 3.0 * PI / 4.0, FRAC_PI_2, 1.0);
        assert!((p.xi - 7.0 * PI / 8.0).abs() < 1e-15);
        assert!((ch_closed(&p) + 0.204_515_303_042_725_05).abs() < 1e-15);
        assert!((chsh_closed(&p) - 1.181_938_787_829_099_8).abs() < 1e-14);
    }

    #[test]
    fn assembly_identity_on_grid() {
        for i in 0..20 {
            for j in 0..20 {
                let p = ClosedFormPoint::new(
                    i as f64 * 0.33,
                    j as f64 * 0.29,
                    (i * j) as f64 * 0.1,
                    0.2 * (i % 7) as f64,
                );
                assert!((ch_closed(&p) - ch_assembled(&p)).abs() < 1e-12);
                assert!((chsh_expanded(&p) - chsh_closed(&p)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn depends_on_angle_sum() {
        let a = ch_closed(&ClosedFormPoint::from_sum_difference(0.0, 3.0 * PI / 4.0, FRAC_PI_2, 0.5));
        let b = ch_closed(&ClosedFormPoint::from_sum_difference(PI, 3.0 * PI / 4.0, FRAC_PI_2, 0.5));
        assert!((a - b).abs() > 1e-3);
    }
}
