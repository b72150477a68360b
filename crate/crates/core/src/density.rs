use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::scalar::Real;

/// Two-qubit density matrix over the ordered basis (|++⟩, |+−⟩, |−+⟩, |−−⟩),
/// where `+` is the upper level of each qubit (dressed |+⟩ for an atom,
/// one photon for a cavity).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    m: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Checks that `m` is a 4×4 Hermitian, unit-trace, positive matrix.
    pub fn new(m: CMatrix<T>) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::invalid(format!("two-qubit density matrix must be 4x4, got {}x{}", m.rows(), m.cols())));
        }
        let tol = T::lit(T::HERMITIAN_TOL);
        if !m.is_hermitian(tol) {
            return Err(Error::invalid("density matrix is not Hermitian"));
        }
        let tr = m.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::invalid(format!("density matrix trace is {tr}, expected 1")));
        }
        let eig = hermitian_eigen(&m)?;
        if eig.values[3] < -T::lit(T::PSD_CLAMP) {
            return Err(Error::invalid(format!("density matrix has negative eigenvalue {}", eig.values[3])));
        }
        Ok(Self { m })
    }

    /// Skips validation; for matrices that are density matrices by construction.
    pub(crate) fn new_unchecked(m: CMatrix<T>) -> Self {
        debug_assert_eq!((m.rows(), m.cols()), (4, 4));
        Self { m }
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.m
    }

    /// X-state check: only the diagonal and anti-diagonal may be nonzero.
    pub fn is_x_state(&self, tol: T) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || i + j == 3 || self.m[(i, j)].norm() <= tol))
    }
}
