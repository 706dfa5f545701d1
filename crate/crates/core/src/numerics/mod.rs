//! Small dense kernels: complex matrices, a cyclic Jacobi Hermitian
//! eigensolver, a radix-2 FFT, the complex error function and Gauss–Legendre
//! quadrature.

mod bloch;
mod eigen;
mod erf;
mod fft;
mod matrix;
mod quadrature;

pub use bloch::{pauli_x, pauli_y, pauli_z, unitary_from_bloch};
pub use eigen::{eig_hermitian, SpectralPair, MAX_JACOBI_SWEEPS};
pub use erf::{erf_complex, erfc_complex, ERF_DOMAIN_RADIUS};
pub use fft::{fft_radix2, fft_radix2_in_place, FftDirection};
pub use matrix::ComplexMatrix;
pub use quadrature::GaussLegendre;

/// Default tolerance on `max |H - H^dagger|`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Default tolerance on `max |U^dagger U - I|`.
pub const UNITARY_TOL: f64 = 1e-10;
