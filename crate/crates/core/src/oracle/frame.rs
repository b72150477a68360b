use num_complex::Complex64;

use crate::linalg::{annihilation, kron, number, sigma_plus, sigma_z, CMatrix};
use crate::model::SystemParams;

/// Driven atom plus cavity in the lab frame, on (bare atom {e, g}) ⊗ (Fock
/// levels `0..cutoff`):
/// `ω a†a + (ω0/2)σz + g(σ+ a + σ− a†) + λ(e^{−iωc t}σ+ + e^{iωc t}σ−)`.
pub fn lab_frame_hamiltonian(p: &SystemParams, t: f64, cutoff: usize) -> CMatrix<f64> {
    let parts = LabParts::new(p, cutoff);
    parts.at(t)
}

/// The same pair after the drive-frequency rotation: the cavity term picks up
/// `e^{±iωc t}` and the drive becomes static, `(Δ1/2)σz + λ(σ+ + σ−)`.
pub fn rotated_frame_hamiltonian(p: &SystemParams, t: f64, cutoff: usize) -> CMatrix<f64> {
    let id_f = CMatrix::<f64>::identity(cutoff);
    let jump = kron(&sigma_plus(), &annihilation(cutoff));
    let sp = kron(&sigma_plus(), &id_f);
    let phase = Complex64::from_polar(1.0, p.omega_c * t);
    let cavity = kron(&CMatrix::identity(2), &number(cutoff)).scale_real(p.omega);
    let exchange = &jump.scale(phase * p.g) + &jump.adjoint().scale(phase.conj() * p.g);
    let detuning = kron(&sigma_z(), &id_f).scale_real(0.5 * (p.omega0 - p.omega_c));
    let drive = (&sp + &sp.adjoint()).scale_real(p.lambda);
    &(&cavity + &exchange) + &(&detuning + &drive)
}

/// Time-independent and drive pieces of the lab-frame Hamiltonian.
pub(crate) struct LabParts {
    pub(crate) static_part: CMatrix<f64>,
    /// λ σ+ ⊗ 1
    pub(crate) raise: CMatrix<f64>,
    pub(crate) omega_c: f64,
}

impl LabParts {
    pub(crate) fn new(p: &SystemParams, cutoff: usize) -> Self {
        let id_f = CMatrix::<f64>::identity(cutoff);
        let jump = kron(&sigma_plus(), &annihilation(cutoff));
        let cavity = kron(&CMatrix::identity(2), &number(cutoff)).scale_real(p.omega);
        let atom = kron(&sigma_z(), &id_f).scale_real(0.5 * p.omega0);
        let exchange = (&jump + &jump.adjoint()).scale_real(p.g);
        Self {
            static_part: &(&cavity + &atom) + &exchange,
            raise: kron(&sigma_plus(), &id_f).scale_real(p.lambda),
            omega_c: p.omega_c,
        }
    }

    pub(crate) fn at(&self, t: f64) -> CMatrix<f64> {
        let phase = Complex64::from_polar(1.0, -self.omega_c * t);
        let drive = &self.raise.scale(phase) + &self.raise.adjoint().scale(phase.conj());
        &self.static_part + &drive
    }
}

/// `exp(−iωc t σz/2) ⊗ 1`.
fn frame_rotation(omega_c: f64, t: f64, cutoff: usize) -> CMatrix<f64> {
    let mut diag = vec![Complex64::from_polar(1.0, -0.5 * omega_c * t); cutoff];
    diag.extend(std::iter::repeat_n(Complex64::from_polar(1.0, 0.5 * omega_c * t), cutoff));
    let mut u = CMatrix::zeros(2 * cutoff, 2 * cutoff);
    for (i, z) in diag.into_iter().enumerate() {
        u[(i, i)] = z;
    }
    u
}

/// Largest entrywise deviation of `U†HU − iU†∂U/∂t` from the rotated-frame
/// Hamiltonian over `t_samples`, with `∂U/∂t` taken as a centered difference
/// of width `2·fd_step`.
pub fn frame_transform_check(p: &SystemParams, t_samples: &[f64], fd_step: f64, cutoff: usize) -> f64 {
    let parts = LabParts::new(p, cutoff);
    let i = Complex64::new(0.0, 1.0);
    t_samples
        .iter()
        .map(|&t| {
            let u = frame_rotation(p.omega_c, t, cutoff);
            let ud = u.adjoint();
            let du = (&frame_rotation(p.omega_c, t + fd_step, cutoff)
                - &frame_rotation(p.omega_c, t - fd_step, cutoff))
                .scale_real(0.5 / fd_step);
            let transformed = &ud.matmul(&parts.at(t)).matmul(&u) - &ud.matmul(&du).scale(i);
            transformed.max_abs_diff(&rotated_frame_hamiltonian(p, t, cutoff))
        })
        .fold(0.0, f64::max)
}
