use num_complex::Complex64;

use super::frame::LabParts;
use super::pair::qubit_block;
use super::rk4::Rk4;
use super::OracleConfig;
use crate::concurrence::{c_atoms_closed, c_cavities_closed, wootters};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, CMatrix, CVector};
use crate::model::{derive_params, dressed_states, SystemParams};

const STABILITY_LIMIT: f64 = 2.8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaSample {
    pub t: f64,
    /// |C_a1a2(lab) − C_a1a2(closed form)|
    pub atoms_deviation: f64,
    /// |C_c1c2(lab) − C_c1c2(closed form)|, with the lab-frame cavity state
    /// restricted to at most one photon per cavity and renormalized
    pub cavities_deviation: f64,
    /// Cavity weight outside the one-photon sector.
    pub leakage: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RwaReport {
    pub samples: Vec<RwaSample>,
}

impl RwaReport {
    pub fn max_deviation(&self) -> f64 {
        self.samples.iter().map(|s| s.atoms_deviation.max(s.cavities_deviation)).fold(0.0, f64::max)
    }

    pub fn max_leakage(&self) -> f64 {
        self.samples.iter().map(|s| s.leakage).fold(0.0, f64::max)
    }
}

/// Row-wise bound on the spectral radius.
fn norm_bound(m: &CMatrix<f64>) -> f64 {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Integrates the unapproximated lab-frame pair dynamics (drive included, no
/// rotating frame) and reports how far its partition concurrences stray from
/// the closed forms over the configured horizon. Informational only.
pub fn rwa_report(p: &SystemParams, cfg: &OracleConfig) -> Result<RwaReport> {
    cfg.validate()?;
    let d = derive_params(p)?;
    let n = cfg.fock_cutoff;
    let parts = LabParts::new(p, n);
    let h = cfg.step_for(&d);
    let bound = norm_bound(&parts.static_part) + 2.0 * norm_bound(&parts.raise);
    if h * bound > STABILITY_LIMIT {
        return Err(Error::numerical(format!("step {h} is unstable for Hamiltonian norm {bound}")));
    }

    let rhs = |t: f64, y: &[Complex64], dy: &mut [Complex64]| {
        let phase = Complex64::from_polar(1.0, -parts.omega_c * t);
        let (s, r) = (&parts.static_part, &parts.raise);
        for i in 0..y.len() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..y.len() {
                let drive = r[(i, j)] * phase + r[(j, i)].conj() * phase.conj();
                acc += (s[(i, j)] + drive) * y[j];
            }
            dy[i] = Complex64::new(0.0, -1.0) * acc;
        }
    };

    let (plus, minus) = dressed_states(&d);
    let vacuum = CVector::basis(n, 0);
    let mut psi_plus = plus.kron(&vacuum).into_vec();
    let mut psi_minus = minus.kron(&vacuum).into_vec();
    let mut rk = Rk4::new(2 * n);

    let mut samples = Vec::with_capacity(cfg.rwa_samples);
    let mut t = 0.0;
    for k in 0..cfg.rwa_samples {
        let target = cfg.rwa_horizon * k as f64 / (cfg.rwa_samples - 1) as f64;
        rk.advance(&rhs, t, target, h, &mut psi_plus);
        rk.advance(&rhs, t, target, h, &mut psi_minus);
        t = target;

        let (a, b) = (CVector::new(psi_plus.clone()), CVector::new(psi_minus.clone()));
        let joint = b.kron(&b).scale(p.alpha).add(&a.kron(&a).scale(p.beta));
        if (joint.norm_sqr() - 1.0).abs() > 1e-6 {
            return Err(Error::numerical(format!("lab-frame integration lost unitarity at t = {t}")));
        }
        let rho = joint.projector();
        let dims = [2, n, 2, n];

        // bare-basis atoms; concurrence is blind to the local basis change
        let atoms = DensityMatrix::new(partial_trace(&rho, &dims, &[0, 2])?)?;
        let cav_full = partial_trace(&rho, &dims, &[1, 3])?;
        let block = qubit_block(&cav_full, [n, n], [true, true]);
        let kept = block.trace().re;
        let leakage = (1.0 - kept).max(0.0);
        let c_cav = if kept > 1e-12 { wootters(&DensityMatrix::new(block.scale_real(1.0 / kept))?)?.0 } else { 0.0 };

        samples.push(RwaSample {
            t,
            atoms_deviation: (wootters(&atoms)?.0 - c_atoms_closed(p, &d, t).0).abs(),
            cavities_deviation: (c_cav - c_cavities_closed(p, &d, t).0).abs(),
            leakage,
        });
    }
    Ok(RwaReport { samples })
}
