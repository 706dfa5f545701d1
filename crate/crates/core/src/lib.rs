//! Work statistics of a driven closed quantum system recorded by a quantum
//! detector.
//!
//! Two readout schemes are modelled:
//!
//! * **Scheme A** (dispersive / phase readout): the detector stores the
//!   characteristic function `G(λ)` as a relative phase. Its Fourier transform
//!   is a quasiprobability `P(W)` that may go negative when the initial state
//!   carries coherence between energy eigenstates ([`scheme_a`]).
//! * **Scheme B** (pointer readout): the detector position shifts in
//!   proportion to the injected energy. A sharp pointer reproduces the
//!   two-measurement statistics, a broad one lets interference back in
//!   ([`pointer`]).
//!
//! [`cqed`] maps both schemes onto a qubit dispersively coupled to a
//! truncated cavity mode (Fock superpositions for A, coherent states and
//! Husimi-Q maps for B). [`numerics`] holds the small dense kernels
//! (Hermitian eigensolver, radix-2 FFT, complex error function, quadrature)
//! and [`cli`] drives the `workdist` binary.

pub mod cli;
pub mod cqed;
pub mod error;
pub mod numerics;
pub mod pointer;
pub mod scheme_a;
pub mod system;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
