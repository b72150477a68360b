//! Two-qubit concurrence. The general Wootters construction sits next to an
//! X-state shortcut and the closed forms for the atom and cavity partitions.

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{psd_sqrt, singular_values, spin_flip, CMatrix};
use crate::model::{amplitudes, rho_partition, DerivedParams, Partition, SystemParams};
use crate::scalar::Real;

/// Concurrence in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Concurrence<T>(pub T);

impl<T: Real> Concurrence<T> {
    fn clamped(x: T) -> Self {
        Concurrence(x.max(T::zero()).min(T::one()))
    }

    pub fn value(self) -> T {
        self.0
    }
}

/// The four Wootters values `λ1 ≥ λ2 ≥ λ3 ≥ λ4`: square roots of the
/// eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)`.
///
/// They are obtained as the singular values of `√ρ (σy⊗σy) √ρ*`, which equal
/// the square roots of the eigenvalues of the Hermitian `√ρ ρ̃ √ρ` without
/// taking a square root of round-off.
pub fn wootters_values<T: Real>(rho: &DensityMatrix<T>) -> Result<[T; 4]> {
    let s = psd_sqrt(rho.matrix())?;
    let flip = spin_flip::<T>();
    let m = s.matmul(&flip).matmul(&s.conj());
    let sv = singular_values(&m)?;
    Ok([sv[0], sv[1], sv[2], sv[3]])
}

/// General Wootters concurrence `max{0, λ1 − λ2 − λ3 − λ4}`.
pub fn wootters<T: Real>(rho: &DensityMatrix<T>) -> Result<Concurrence<T>> {
    let [l1, l2, l3, l4] = wootters_values(rho)?;
    Ok(Concurrence::clamped(l1 - l2 - l3 - l4))
}

/// Validates a raw 4×4 matrix as a density matrix, then applies [`wootters`].
pub fn wootters_matrix<T: Real>(rho: &CMatrix<T>) -> Result<Concurrence<T>> {
    wootters(&DensityMatrix::new(rho.clone())?)
}

/// Concurrence of an X-state,
/// `max{0, 2(|z_in| − √(ad)), 2(|z_out| − √(bc))}` with `a, b, c, d` the
/// populations, `z_in = ρ[1][2]` and `z_out = ρ[0][3]`.
pub fn xstate_concurrence<T: Real>(rho: &DensityMatrix<T>) -> Result<Concurrence<T>> {
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(16.0));
    if !rho.is_x_state(tol) {
        return Err(Error::invalid("matrix is not an X-state"));
    }
    let m = rho.matrix();
    let pop = |i: usize| m[(i, i)].re.max(T::zero());
    let (a, b, c, d) = (pop(0), pop(1), pop(2), pop(3));
    let two = T::lit(2.0);
    let inner = two * (m[(1, 2)].norm() - (a * d).sqrt());
    let outer = two * (m[(0, 3)].norm() - (b * c).sqrt());
    Ok(Concurrence::clamped(inner.max(outer)))
}

/// Atom-atom concurrence, `2|f1|² max{0, |αβ| − |β f2|²}`.
pub fn c_atoms_closed(p: &SystemParams, d: &DerivedParams, t: f64) -> Concurrence<f64> {
    let a = amplitudes(d, t);
    Concurrence::clamped(closed_pair(p, a.f1.norm_sqr(), a.f2.norm_sqr()))
}

/// Cavity-cavity concurrence, `2|f2|² max{0, |αβ| − |β f1|²}`.
pub fn c_cavities_closed(p: &SystemParams, d: &DerivedParams, t: f64) -> Concurrence<f64> {
    let a = amplitudes(d, t);
    Concurrence::clamped(closed_pair(p, a.f2.norm_sqr(), a.f1.norm_sqr()))
}

/// Concurrence of one partition at time `t`: closed forms for the
/// atom-atom and cavity-cavity pairs, Wootters on the reduced state otherwise.
pub fn partition_concurrence(
    p: &SystemParams,
    d: &DerivedParams,
    t: f64,
    partition: Partition,
) -> Result<Concurrence<f64>> {
    match partition {
        Partition::A1A2 => Ok(c_atoms_closed(p, d, t)),
        Partition::C1C2 => Ok(c_cavities_closed(p, d, t)),
        cross => wootters(&rho_partition(p, d, t, cross)),
    }
}

/// `2 u max{0, |αβ| − |β|² v}`, where `u` is the population that keeps the
/// excitation on the partition and `v` the one that carries it away.
pub(crate) fn closed_pair(p: &SystemParams, u: f64, v: f64) -> f64 {
    let ab = (p.alpha * p.beta).norm();
    2.0 * u * (ab - p.beta.norm_sqr() * v).max(0.0)
}
