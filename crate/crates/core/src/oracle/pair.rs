use num_complex::Complex64;

use super::{OracleConfig, LEAKAGE_TOL};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{
    annihilation, hermitian_eigen, kron, number, partial_trace, sigma_plus, sigma_z, CMatrix, CVector, HermitianEigen,
};
use crate::model::{DerivedParams, SystemParams};

/// Excitation-conserving Jaynes-Cummings generator of one dressed atom and
/// its cavity, `ω a†a + (ωq/2) Σz + g'(Σ+ a + Σ− a†)` with `ωq = Δ2 + ω`,
/// on (dressed qubit {+, −}) ⊗ (Fock levels `0..cutoff`).
pub fn effective_pair_hamiltonian(p: &SystemParams, d: &DerivedParams, cutoff: usize) -> CMatrix<f64> {
    let a = annihilation::<f64>(cutoff);
    let id_q = CMatrix::<f64>::identity(2);
    let id_f = CMatrix::<f64>::identity(cutoff);
    let omega_q = d.delta2 + p.omega;
    let field = kron(&id_q, &number(cutoff)).scale_real(p.omega);
    let atom = kron(&sigma_z(), &id_f).scale_real(0.5 * omega_q);
    let jump = kron(&sigma_plus(), &a);
    let coupling = (&jump + &jump.adjoint()).scale_real(d.g_prime);
    &(&field + &atom) + &coupling
}

/// `exp(−iHt)` for the effective pair generator, through one eigen-decomposition.
#[derive(Debug, Clone)]
pub struct PairPropagator {
    cutoff: usize,
    eigen: HermitianEigen<f64>,
}

impl PairPropagator {
    pub fn new(p: &SystemParams, d: &DerivedParams, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::invalid("Fock cutoff must be at least 2"));
        }
        let eigen = hermitian_eigen(&effective_pair_hamiltonian(p, d, cutoff))?;
        Ok(Self { cutoff, eigen })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Pair basis index of `|q, n⟩`, `q = 0` for `|+⟩`.
    pub fn index(&self, q: usize, n: usize) -> usize {
        q * self.cutoff + n
    }

    /// Evolves `psi0` to time `t`, failing if the top Fock level picks up
    /// more than [`LEAKAGE_TOL`] of the weight.
    pub fn evolve(&self, psi0: &CVector<f64>, t: f64) -> Result<CVector<f64>> {
        let v = &self.eigen.vectors;
        let dim = v.rows();
        let coeffs: Vec<Complex64> = (0..dim)
            .map(|k| {
                let overlap = (0..dim).fold(Complex64::new(0.0, 0.0), |acc, i| acc + v[(i, k)].conj() * psi0[i]);
                overlap * Complex64::from_polar(1.0, -self.eigen.values[k] * t)
            })
            .collect();
        let psi = CVector::new(
            (0..dim).map(|i| (0..dim).fold(Complex64::new(0.0, 0.0), |acc, k| acc + v[(i, k)] * coeffs[k])).collect(),
        );
        let top = self.cutoff - 1;
        let leak = psi[self.index(0, top)].norm_sqr() + psi[self.index(1, top)].norm_sqr();
        if leak > LEAKAGE_TOL {
            return Err(Error::numerical(format!("Fock truncation leakage {leak:e} at t = {t}")));
        }
        Ok(psi)
    }
}

/// State of one pair at time `t` from `|+, 0⟩`.
pub fn evolve_pair(p: &SystemParams, d: &DerivedParams, t: f64, cfg: &OracleConfig) -> Result<CVector<f64>> {
    cfg.validate()?;
    let prop = PairPropagator::new(p, d, cfg.fock_cutoff)?;
    prop.evolve(&CVector::basis(2 * cfg.fock_cutoff, prop.index(0, 0)), t)
}

/// All four two-qubit partitions of the brute-force four-party state.
#[derive(Debug, Clone)]
pub struct BruteForceStates {
    pub atoms: DensityMatrix<f64>,
    pub cavities: DensityMatrix<f64>,
    pub a1c2: DensityMatrix<f64>,
    pub c1a2: DensityMatrix<f64>,
}

/// Pulls the qubit block out of a reduced two-factor matrix with local
/// dimensions `dims`. Cavity factors keep Fock levels {1, 0} (upper first),
/// atom factors keep both levels.
pub(crate) fn qubit_block(m: &CMatrix<f64>, dims: [usize; 2], cavity: [bool; 2]) -> CMatrix<f64> {
    let level = |factor: usize, l: usize| if cavity[factor] { 1 - l } else { l };
    let flat = |i: usize| level(0, i >> 1) * dims[1] + level(1, i & 1);
    let mut out = CMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = m[(flat(i), flat(j))];
        }
    }
    out
}

fn checked_block(m: &CMatrix<f64>, dims: [usize; 2], cavity: [bool; 2], what: &str) -> Result<DensityMatrix<f64>> {
    let block = qubit_block(m, dims, cavity);
    let leak = 1.0 - block.trace().re;
    if leak.abs() > LEAKAGE_TOL {
        return Err(Error::numerical(format!("{what}: weight {leak:e} outside the one-photon sector")));
    }
    DensityMatrix::new(block)
}

/// Evolves `α|−−⟩|00⟩ + β|++⟩|00⟩` as a product of two independent pair
/// evolutions and reduces it onto every two-qubit partition.
pub fn evolve_joint_bruteforce(
    p: &SystemParams,
    d: &DerivedParams,
    t: f64,
    cfg: &OracleConfig,
) -> Result<BruteForceStates> {
    cfg.validate()?;
    let prop = PairPropagator::new(p, d, cfg.fock_cutoff)?;
    let n = cfg.fock_cutoff;
    let plus = prop.evolve(&CVector::basis(2 * n, prop.index(0, 0)), t)?;
    let minus = prop.evolve(&CVector::basis(2 * n, prop.index(1, 0)), t)?;

    // factor order (atom1, cavity1, atom2, cavity2)
    let joint = minus.kron(&minus).scale(p.alpha).add(&plus.kron(&plus).scale(p.beta));
    let rho = joint.projector();
    let dims = [2, n, 2, n];
    let reduce = |keep: [usize; 2]| partial_trace(&rho, &dims, &keep);

    Ok(BruteForceStates {
        atoms: checked_block(&reduce([0, 2])?, [2, 2], [false, false], "atoms")?,
        cavities: checked_block(&reduce([1, 3])?, [n, n], [true, true], "cavities")?,
        a1c2: checked_block(&reduce([0, 3])?, [2, n], [false, true], "a1c2")?,
        c1a2: checked_block(&reduce([1, 2])?, [n, 2], [true, false], "c1a2")?,
    })
}
