//! Scalar abstraction for the dense linear algebra and the concurrence
//! routines. Both `f32` and `f64` are supported; the physics modules work in
//! `f64` only.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

pub trait Real: Float + FromPrimitive + Debug + Display + Sum + Send + Sync + 'static {
    /// Relative off-diagonal norm at which a Jacobi sweep is considered converged.
    const JACOBI_TOL: f64;
    /// Largest magnitude of a negative eigenvalue silently clamped to zero.
    const PSD_CLAMP: f64;
    /// Eigenvalues below `-PSD_REJECT` mark a matrix as not positive semidefinite.
    const PSD_REJECT: f64;
    /// Entrywise tolerance for Hermiticity and unit-trace checks.
    const HERMITIAN_TOL: f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }
}

impl Real for f64 {
    const JACOBI_TOL: f64 = 1e-14;
    const PSD_CLAMP: f64 = 1e-10;
    const PSD_REJECT: f64 = 1e-8;
    const HERMITIAN_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const JACOBI_TOL: f64 = 1e-6;
    const PSD_CLAMP: f64 = 1e-5;
    const PSD_REJECT: f64 = 1e-4;
    const HERMITIAN_TOL: f64 = 1e-5;
}
