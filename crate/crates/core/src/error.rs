use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |H - H^dagger| = {deviation:e}")]
    NonHermitian { deviation: f64 },
    #[error("matrix is not unitary: max |U^dagger U - I| = {deviation:e}")]
    NonUnitary { deviation: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("FFT length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("aggregated weight at W = {work} has imaginary part {imag:e}")]
    NonRealAggregate { work: f64, imag: f64 },
    #[error("moment of order {order} has imaginary part {imag:e}")]
    NonRealMoment { order: usize, imag: f64 },
    #[error("moment order {0} outside 1..=6")]
    InvalidMomentOrder(usize),
    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),
    #[error("evaluation grid is empty")]
    EmptyGrid,
    #[error("initial spectrum is degenerate: levels {0} and {1} coincide")]
    DegenerateInitialSpectrum(usize, usize),
    #[error("fewer than two distinct initial levels")]
    SingleLevel,
    #[error("Fock amplitudes are not normalized: sum |G_n|^2 = {0}")]
    UnnormalizedFockVector(f64),
    #[error("Fock cutoff {cutoff} too small for alpha = {alpha} (need >= {required})")]
    CutoffTooSmall { cutoff: usize, alpha: f64, required: usize },
    #[error("expected a two-level system, got dimension {0}")]
    NotAQubit(usize),
    #[error("closed-form value has imaginary residue {0:e}")]
    NonRealResidue(f64),
    #[error("radial quadrature did not converge: {0}")]
    QuadratureNotConverged(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
