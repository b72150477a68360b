//! Operator constants. Two-level operators use the ordering (upper, lower),
//! so `sigma_z = diag(1, -1)` and `sigma_plus = |0⟩⟨1|`.

use num_complex::Complex;

use crate::linalg::CMatrix;
use crate::scalar::Real;

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub fn sigma_x<T: Real>() -> CMatrix<T> {
    CMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]])
}

pub fn sigma_y<T: Real>() -> CMatrix<T> {
    CMatrix::from_rows(&[vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]])
}

pub fn sigma_z<T: Real>() -> CMatrix<T> {
    CMatrix::from_real_diag(&[T::one(), -T::one()])
}

pub fn sigma_plus<T: Real>() -> CMatrix<T> {
    CMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(0., 0.), c(0., 0.)]])
}

pub fn sigma_minus<T: Real>() -> CMatrix<T> {
    sigma_plus::<T>().adjoint()
}

/// σy ⊗ σy, the two-qubit spin flip.
pub fn spin_flip<T: Real>() -> CMatrix<T> {
    super::kron(&sigma_y(), &sigma_y())
}

/// Annihilation operator on the Fock space truncated to `0..cutoff`.
pub fn annihilation<T: Real>(cutoff: usize) -> CMatrix<T> {
    let mut a = CMatrix::zeros(cutoff, cutoff);
    for n in 1..cutoff {
        a[(n - 1, n)] = Complex::new(T::lit(n as f64).sqrt(), T::zero());
    }
    a
}

pub fn number<T: Real>(cutoff: usize) -> CMatrix<T> {
    CMatrix::from_real_diag(&(0..cutoff).map(|n| T::lit(n as f64)).collect::<Vec<_>>())
}
