//! Simulation core for a single-photon homodyne Bell experiment.
//!
//! A single photon leaves a balanced beamsplitter and is shared between two
//! stations. Each station mixes its half with a coherent local oscillator on a
//! variable beamsplitter and counts photons at the two output ports. The event
//! "one photon at `c`, none at `d`" is the favorable outcome (value `-1`).
//!
//! The crate evaluates detection probabilities, Clauser-Horne (CH) and CHSH
//! values in two independent ways:
//!
//! * [`optics`] and [`detection`]: brute-force numerics on a truncated
//!   four-mode Fock space ([`fock`]).
//! * [`analytic`]: closed-form expressions for the same quantities.
//!
//! [`bell`] assembles CH/CHSH records and the entangled/residual state split,
//! and [`scan`] runs parameter grids and derivative-free searches for a
//! violation of the CHSH bound.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod bell;
pub mod detection;
mod error;
pub mod fock;
pub mod linalg;
mod math;
pub mod optics;
pub mod scan;

pub use error::{Error, Result};
pub use num_complex::Complex64;
