//! Small dense complex linear algebra, generic over the real scalar type.
//!
//! Everything here is sized for matrices of dimension at most a few dozen:
//! two-qubit density matrices and truncated atom-cavity spaces.

mod constants;
mod eigen;
mod matrix;
mod ops;

pub use constants::{annihilation, number, sigma_minus, sigma_plus, sigma_x, sigma_y, sigma_z, spin_flip};
pub use eigen::{hermitian_eigen, psd_sqrt, singular_values, HermitianEigen};
pub use matrix::{CMatrix, CVector};
pub use ops::{kron, partial_trace};
