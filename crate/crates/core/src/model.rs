//! The driven double Jaynes-Cummings model in closed form.
//!
//! Each atom is dressed by its classical drive; in the dressed, rotating
//! frame every atom-cavity pair reduces to a detuned Jaynes-Cummings pair with
//! coupling `g' = g cos²(θ/2)` and detuning `Δ2 = √(Δ1² + 4λ²) + ωc − ω`.
//! Starting from `(α|−−⟩ + β|++⟩)|00⟩`, the four-party state stays inside a
//! five-dimensional subspace whose amplitudes are built from the single-pair
//! amplitudes `f1` (excitation in the atom) and `f2` (excitation in the
//! cavity).
//!
//! Qubit convention used by every 4×4 matrix in the crate: index 0 is the
//! upper level (`|+⟩` for atoms, one photon for cavities), index 1 the lower
//! level. The 16-dimensional [`JointStateVector`] keeps cavities in Fock order
//! (`|0⟩` first); [`rho_cavities`] and [`rho_cross`] convert.
//!
//! The cross partitions have no closed form in the model itself. Numerically
//! they are X-states with outer coherence `αβ* f1* f2*`, and their concurrence
//! matches `2|f1 f2| max{0, |αβ| − |β|²|f1 f2|}`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, CMatrix, CVector};

const NORM_TOL: f64 = 1e-12;

/// Physical inputs. Frequencies and couplings first, then the initial
/// amplitudes of `α|−−⟩ + β|++⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub omega: f64,
    pub omega0: f64,
    pub omega_c: f64,
    pub g: f64,
    pub lambda: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SystemParams {
    pub fn new(
        omega: f64,
        omega0: f64,
        omega_c: f64,
        g: f64,
        lambda: f64,
        alpha: Complex64,
        beta: Complex64,
    ) -> Result<Self> {
        let p = Self { omega, omega0, omega_c, g, lambda, alpha, beta };
        p.validate()?;
        Ok(p)
    }

    /// Parameterization by `|α|²`, with `α` real and `β = √(1−|α|²) e^{iφ}`.
    pub fn with_populations(
        omega: f64,
        omega0: f64,
        omega_c: f64,
        g: f64,
        lambda: f64,
        alpha_sq: f64,
        beta_phase: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::invalid(format!("|alpha|^2 must lie in [0, 1], got {alpha_sq}")));
        }
        let alpha = Complex64::new(alpha_sq.sqrt(), 0.0);
        let beta = Complex64::from_polar((1.0 - alpha_sq).sqrt(), beta_phase);
        Self::new(omega, omega0, omega_c, g, lambda, alpha, beta)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.omega, self.omega0, self.omega_c, self.g, self.lambda];
        if all.iter().any(|x| !x.is_finite())
            || ![self.alpha.re, self.alpha.im, self.beta.re, self.beta.im].iter().all(|x| x.is_finite())
        {
            return Err(Error::invalid("parameters must be finite"));
        }
        if !(self.omega > 0.0 && self.omega0 > 0.0) {
            return Err(Error::invalid("cavity and atomic frequencies must be positive"));
        }
        if self.omega_c < 0.0 {
            return Err(Error::invalid("drive frequency must be non-negative"));
        }
        if self.g <= 0.0 {
            return Err(Error::invalid("atom-cavity coupling g must be positive"));
        }
        if self.lambda < 0.0 {
            return Err(Error::invalid("drive strength lambda must be non-negative"));
        }
        let norm = self.alpha.norm_sqr() + self.beta.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!("|alpha|^2 + |beta|^2 = {norm}, expected 1")));
        }
        Ok(())
    }

    /// Same parameters with a different drive.
    pub fn with_drive(&self, lambda: f64, omega_c: f64) -> Result<Self> {
        Self::new(self.omega, self.omega0, omega_c, self.g, lambda, self.alpha, self.beta)
    }
}

/// Quantities of the dressed, rotating frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Δ1 = ω0 − ωc.
    pub delta1: f64,
    /// Mixing angle θ ∈ [0, π].
    pub theta: f64,
    /// Ω1 = √(Δ1² + 4λ²), the dressed-state splitting.
    pub rabi_splitting: f64,
    /// ω' = Ω1 + ωc.
    pub omega_prime: f64,
    /// g' = g cos²(θ/2).
    pub g_prime: f64,
    /// Δ2 = Ω1 + ωc − ω.
    pub delta2: f64,
    /// Ω = √(Δ2²/4 + g'²).
    pub big_omega: f64,
}

impl DerivedParams {
    /// Period π/Ω shared by every concurrence in the model.
    pub fn period(&self) -> f64 {
        PI / self.big_omega
    }

    /// Largest value reached by |f2|², namely g'²/Ω².
    pub fn max_transfer(&self) -> f64 {
        (self.g_prime / self.big_omega).powi(2)
    }
}

pub fn derive_params(p: &SystemParams) -> Result<DerivedParams> {
    p.validate()?;
    let delta1 = p.omega0 - p.omega_c;
    let theta = (2.0 * p.lambda).atan2(delta1);
    if p.lambda == 0.0 && delta1 < 0.0 {
        // θ = π exactly: the upper dressed state is the bare ground state
        return Err(Error::DegenerateCoupling);
    }
    let rabi_splitting = delta1.hypot(2.0 * p.lambda);
    let omega_prime = rabi_splitting + p.omega_c;
    let g_prime = p.g * (0.5 * theta).cos().powi(2);
    if g_prime <= 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    let delta2 = omega_prime - p.omega;
    let big_omega = (0.5 * delta2).hypot(g_prime);
    Ok(DerivedParams { delta1, theta, rabi_splitting, omega_prime, g_prime, delta2, big_omega })
}

/// Dressed states `(|+⟩, |−⟩)` in the bare basis `(|e⟩, |g⟩)`.
pub fn dressed_states(d: &DerivedParams) -> (CVector<f64>, CVector<f64>) {
    let (s, c) = (0.5 * d.theta).sin_cos();
    let plus = CVector::new(vec![Complex64::new(c, 0.0), Complex64::new(s, 0.0)]);
    let minus = CVector::new(vec![Complex64::new(-s, 0.0), Complex64::new(c, 0.0)]);
    (plus, minus)
}

/// Single-pair amplitudes at one instant: `f1` on |+, 0⟩, `f2` on |−, 1⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub t: f64,
    pub f1: Complex64,
    pub f2: Complex64,
}

pub fn amplitudes(d: &DerivedParams, t: f64) -> Amplitudes {
    let (sin, cos) = (d.big_omega * t).sin_cos();
    let half = 0.5 * d.delta2 * t;
    let f1 = Complex64::from_polar(1.0, half) * Complex64::new(cos, -d.delta2 / (2.0 * d.big_omega) * sin);
    let f2 = Complex64::from_polar(1.0, -half) * Complex64::new(0.0, -d.g_prime * sin / d.big_omega);
    Amplitudes { t, f1, f2 }
}

/// Flat index into the joint basis (atom1, atom2, cavity1, cavity2).
/// Atoms: 0 = |+⟩, 1 = |−⟩. Cavities: photon number.
pub const fn joint_index(a1: usize, a2: usize, c1: usize, c2: usize) -> usize {
    a1 * 8 + a2 * 4 + c1 * 2 + c2
}

const PLUS: usize = 0;
const MINUS: usize = 1;

/// Four-party state over (atom1 {+,−}) ⊗ (atom2 {+,−}) ⊗ (cavity1 {0,1}) ⊗ (cavity2 {0,1}).
#[derive(Debug, Clone, PartialEq)]
pub struct JointStateVector(pub CVector<f64>);

impl JointStateVector {
    pub fn vector(&self) -> &CVector<f64> {
        &self.0
    }

    pub fn projector(&self) -> CMatrix<f64> {
        self.0.projector()
    }
}

pub fn joint_state(p: &SystemParams, d: &DerivedParams, t: f64) -> JointStateVector {
    let Amplitudes { f1, f2, .. } = amplitudes(d, t);
    let mut v = CVector::zeros(16);
    v[joint_index(MINUS, MINUS, 0, 0)] = p.alpha;
    v[joint_index(PLUS, PLUS, 0, 0)] = p.beta * f1 * f1;
    v[joint_index(MINUS, MINUS, 1, 1)] = p.beta * f2 * f2;
    v[joint_index(PLUS, MINUS, 0, 1)] = p.beta * f1 * f2;
    v[joint_index(MINUS, PLUS, 1, 0)] = p.beta * f1 * f2;
    JointStateVector(v)
}

/// Builds the X-state with populations `(pp, pm, mp, mm)` and coherence
/// `⟨−−|ρ|++⟩ = z`.
fn outer_x_state(pops: [f64; 4], z: Complex64) -> DensityMatrix<f64> {
    let mut m = CMatrix::from_real_diag(&pops);
    m[(3, 0)] = z;
    m[(0, 3)] = z.conj();
    DensityMatrix::new_unchecked(m)
}

/// Reduced state of the two atoms.
pub fn rho_atoms(p: &SystemParams, d: &DerivedParams, t: f64) -> DensityMatrix<f64> {
    let Amplitudes { f1, f2, .. } = amplitudes(d, t);
    pair_matrix(p, f1, f2)
}

/// Reduced state of the two cavities; the atom formula with `f1` and `f2`
/// exchanged.
pub fn rho_cavities(p: &SystemParams, d: &DerivedParams, t: f64) -> DensityMatrix<f64> {
    let Amplitudes { f1, f2, .. } = amplitudes(d, t);
    pair_matrix(p, f2, f1)
}

/// Shared shape of the atom and cavity states, with `u` the amplitude that
/// keeps the excitation on the partition and `v` the one that moves it away.
fn pair_matrix(p: &SystemParams, u: Complex64, v: Complex64) -> DensityMatrix<f64> {
    let b2 = p.beta.norm_sqr();
    let (u2, v2) = (u.norm_sqr(), v.norm_sqr());
    let pp = b2 * u2 * u2;
    let mixed = b2 * u2 * v2;
    let mm = p.alpha.norm_sqr() + b2 * v2 * v2;
    let z = p.alpha * p.beta.conj() * (u.conj() * u.conj());
    outer_x_state([pp, mixed, mixed, mm], z)
}

/// Two-qubit partitions of the four-party system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Partition {
    /// atom 1 with atom 2
    A1A2,
    /// cavity 1 with cavity 2
    C1C2,
    /// atom 1 with cavity 2
    A1C2,
    /// cavity 1 with atom 2
    C1A2,
}

impl Partition {
    pub const ALL: [Partition; 4] = [Partition::A1A2, Partition::C1C2, Partition::A1C2, Partition::C1A2];

    pub fn label(&self) -> &'static str {
        match self {
            Partition::A1A2 => "a1a2",
            Partition::C1C2 => "c1c2",
            Partition::A1C2 => "a1c2",
            Partition::C1A2 => "c1a2",
        }
    }

    /// Joint-state factors kept by this partition, in output order.
    fn kept_factors(&self) -> [usize; 2] {
        match self {
            Partition::A1A2 => [0, 1],
            Partition::C1C2 => [2, 3],
            Partition::A1C2 => [0, 3],
            Partition::C1A2 => [2, 1],
        }
    }

    /// Which of the two kept factors is a cavity.
    fn cavity_mask(&self) -> [bool; 2] {
        match self {
            Partition::A1A2 => [false, false],
            Partition::C1C2 => [true, true],
            Partition::A1C2 => [false, true],
            Partition::C1A2 => [true, false],
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1a2" => Ok(Partition::A1A2),
            "c1c2" => Ok(Partition::C1C2),
            "a1c2" => Ok(Partition::A1C2),
            "c1a2" => Ok(Partition::C1A2),
            other => Err(Error::invalid(format!("unknown partition label '{other}'"))),
        }
    }
}

/// Atom-cavity partitions, the ones without a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossPartition {
    A1C2,
    C1A2,
}

impl From<CrossPartition> for Partition {
    fn from(c: CrossPartition) -> Self {
        match c {
            CrossPartition::A1C2 => Partition::A1C2,
            CrossPartition::C1A2 => Partition::C1A2,
        }
    }
}

impl TryFrom<Partition> for CrossPartition {
    type Error = Error;

    fn try_from(p: Partition) -> Result<Self> {
        match p {
            Partition::A1C2 => Ok(CrossPartition::A1C2),
            Partition::C1A2 => Ok(CrossPartition::C1A2),
            other => Err(Error::invalid(format!("'{other}' is not an atom-cavity partition"))),
        }
    }
}

impl FromStr for CrossPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::from_str(s)?.try_into()
    }
}

/// Reverses the level order of the qubits selected by `flip` in a two-qubit
/// matrix, turning Fock order (|0⟩ first) into upper-level-first order.
pub(crate) fn flip_levels(m: &CMatrix<f64>, flip: [bool; 2]) -> CMatrix<f64> {
    let perm: Vec<usize> = (0..4)
        .map(|i| {
            let (hi, lo) = (i >> 1, i & 1);
            let hi = if flip[0] { 1 - hi } else { hi };
            let lo = if flip[1] { 1 - lo } else { lo };
            (hi << 1) | lo
        })
        .collect();
    m.permuted(&perm)
}

/// Reduces a 16-dimensional joint projector (Fock order for cavities) onto a
/// partition, in upper-level-first order.
pub fn reduce_joint(rho: &CMatrix<f64>, partition: Partition) -> Result<DensityMatrix<f64>> {
    let reduced = partial_trace(rho, &[2, 2, 2, 2], &partition.kept_factors())?;
    Ok(DensityMatrix::new_unchecked(flip_levels(&reduced, partition.cavity_mask())))
}

/// Reduced state of an atom-cavity pair, by partial trace of the joint state.
pub fn rho_cross(p: &SystemParams, d: &DerivedParams, t: f64, partition: CrossPartition) -> DensityMatrix<f64> {
    let rho = joint_state(p, d, t).projector();
    reduce_joint(&rho, partition.into()).expect("joint state is 16-dimensional")
}

/// Reduced state of any partition, using the closed forms where they exist.
pub fn rho_partition(p: &SystemParams, d: &DerivedParams, t: f64, partition: Partition) -> DensityMatrix<f64> {
    match partition {
        Partition::A1A2 => rho_atoms(p, d, t),
        Partition::C1C2 => rho_cavities(p, d, t),
        Partition::A1C2 => rho_cross(p, d, t, CrossPartition::A1C2),
        Partition::C1A2 => rho_cross(p, d, t, CrossPartition::C1A2),
    }
}

#[cfg(test)]
mod tests;
