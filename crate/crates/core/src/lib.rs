//! Entanglement dynamics of two classically driven two-level atoms, each
//! coupled to its own vacuum cavity mode.
//!
//! [`model`] holds the closed-form amplitudes and reduced states of the
//! four-party system. [`concurrence`] turns those states into entanglement
//! numbers, and [`events`] locates sudden death and birth, also across drive
//! sweeps. Everything is cross-checked by brute force in [`oracle`].

pub mod concurrence;
pub mod density;
pub mod error;
pub mod events;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;

pub type ComplexMatrix = linalg::CMatrix<f64>;
pub type ComplexVector = linalg::CVector<f64>;
pub type ComplexMatrix32 = linalg::CMatrix<f32>;
pub type ComplexVector32 = linalg::CVector<f32>;
pub type DensityMatrix = density::DensityMatrix<f64>;
pub type DensityMatrix32 = density::DensityMatrix<f32>;
pub type ConcurrenceValue = concurrence::Concurrence<f64>;
