//! The dense numerical kernels on their own: a Hermitian eigensolve, a
//! radix-2 FFT round trip and a few values of the complex error function.

use workdist::numerics::{eig_hermitian, erf_complex, fft_radix2, pauli_x, pauli_z, FftDirection};
use workdist::C64;

fn main() -> workdist::Result<()> {
    let h = &pauli_z().scale(C64::new(0.5, 0.0)) + &pauli_x().scale(C64::new(0.3, 0.0));
    let spec = eig_hermitian(&h, 1e-12)?;
    println!("eigenvalues {:?}", spec.values);
    println!("reconstruction error {:.2e}", spec.reconstruct().max_abs_diff(&h));

    let signal: Vec<C64> = (0..16).map(|k| C64::from_polar(1.0, 0.4 * k as f64)).collect();
    let spectrum = fft_radix2(&signal, FftDirection::Forward)?;
    let back = fft_radix2(&spectrum, FftDirection::Inverse)?;
    let err = signal.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("FFT round-trip error {err:.2e}");

    for z in [C64::new(0.5, 0.0), C64::new(1.0, 1.0), C64::new(-2.0, 3.0)] {
        println!("erf({z}) = {}", erf_complex(z));
    }
    Ok(())
}
