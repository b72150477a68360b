//! Brute-force validators for the closed forms.
//!
//! Nothing in here uses the closed-form amplitudes: the pair dynamics are
//! integrated or exponentiated from their Hamiltonians in a truncated Fock
//! space, and comparisons with the model rely only on frame-invariant data such as
//! populations and coherence moduli.

mod amplitudes;
mod frame;
mod pair;
mod rk4;
mod rwa;

pub use amplitudes::integrate_amplitudes;
pub use frame::{frame_transform_check, lab_frame_hamiltonian, rotated_frame_hamiltonian};
pub use pair::{effective_pair_hamiltonian, evolve_joint_bruteforce, evolve_pair, BruteForceStates, PairPropagator};
pub use rwa::{rwa_report, RwaReport, RwaSample};

use crate::error::{Error, Result};
use crate::model::DerivedParams;

/// Weight above which population in the highest retained Fock level is
/// treated as truncation failure.
pub const LEAKAGE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Number of Fock levels kept per cavity.
    pub fock_cutoff: usize,
    /// Integration step; `None` means one twenty-thousandth of the period.
    pub step: Option<f64>,
    /// Time span covered by the lab-frame diagnostic.
    pub rwa_horizon: f64,
    /// Number of evenly spaced diagnostic samples over the horizon.
    pub rwa_samples: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { fock_cutoff: 4, step: None, rwa_horizon: 20.0, rwa_samples: 201 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.fock_cutoff < 2 {
            return Err(Error::invalid("Fock cutoff must be at least 2"));
        }
        if let Some(h) = self.step {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::invalid("integration step must be positive"));
            }
        }
        if !(self.rwa_horizon.is_finite() && self.rwa_horizon > 0.0) {
            return Err(Error::invalid("diagnostic horizon must be positive"));
        }
        if self.rwa_samples < 2 {
            return Err(Error::invalid("diagnostic needs at least two samples"));
        }
        Ok(())
    }

    pub fn step_for(&self, d: &DerivedParams) -> f64 {
        self.step.unwrap_or(d.period() / 20_000.0)
    }
}
