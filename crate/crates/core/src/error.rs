use core::fmt;

use crate::fock::ModeLabel;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An occupation number is larger than the mode's cutoff.
    CutoffExceeded {
        mode: ModeLabel,
        count: usize,
        cutoff: usize,
    },
    /// Occupation vector length does not match the number of modes.
    OccupationLength { expected: usize, found: usize },
    DuplicateMode(ModeLabel),
    UnknownMode(ModeLabel),
    /// Two states disagree on their mode list or cutoffs.
    ShapeMismatch,
    /// A detection routine received a state without the expected output modes.
    WrongModeSet,
    /// Coherent amplitude too large to represent.
    AmplitudeOutOfRange(f64),
    /// A two-qubit routine received weight outside the logical subspace.
    NotLogicalSubspace { outside_weight: f64 },
    /// The entangled/residual split needs equal oscillator amplitudes.
    AsymmetricAmplitudes { alpha1: f64, alpha2: f64 },
    GridBudgetExceeded { required: usize, budget: usize },
    InvalidInput(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CutoffExceeded {
                mode,
                count,
                cutoff,
            } => write!(f, "mode {mode}: {count} photons exceed cutoff {cutoff}"),
            Error::OccupationLength { expected, found } => {
                write!(f, "occupation has {found} entries, state has {expected} modes")
            }
            Error::DuplicateMode(m) => write!(f, "mode {m} appears more than once"),
            Error::UnknownMode(m) => write!(f, "mode {m} is not part of the state"),
            Error::ShapeMismatch => f.write_str("states have different modes or cutoffs"),
            Error::WrongModeSet => {
                f.write_str("state is not in post-network mode order (c1, d1, c2, d2)")
            }
            Error::AmplitudeOutOfRange(a) => write!(f, "coherent amplitude |alpha|^2 = {a} is out of range"),
            Error::NotLogicalSubspace { outside_weight } => write!(
                f,
                "state has weight {outside_weight:e} outside the logical qubit subspace"
            ),
            Error::AsymmetricAmplitudes { alpha1, alpha2 } => write!(
                f,
                "state split requires alpha1 == alpha2 (got {alpha1} and {alpha2})"
            ),
            Error::GridBudgetExceeded { required, budget } => write!(
                f,
                "grid needs {required} evaluations, budget is {budget}"
            ),
            Error::InvalidInput(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
