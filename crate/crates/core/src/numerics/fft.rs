//! Iterative radix-2 Cooley–Tukey FFT.
//!
//! Forward transform: `X_k = Σ_n x_n e^{-2πi kn/N}` (unnormalized).
//! Inverse transform: `x_n = (1/N) Σ_k X_k e^{+2πi kn/N}`.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FftDirection {
    Forward,
    Inverse,
}

pub fn fft_radix2(samples: &[C64], direction: FftDirection) -> Result<Vec<C64>> {
    let mut out = samples.to_vec();
    fft_radix2_in_place(&mut out, direction)?;
    Ok(out)
}

pub fn fft_radix2_in_place(data: &mut [C64], direction: FftDirection) -> Result<()> {
    let n = data.len();
    if !n.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(n));
    }
    if n == 1 {
        return Ok(());
    }

    // bit-reversal permutation
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    let sign = match direction {
        FftDirection::Forward => -1.0,
        FftDirection::Inverse => 1.0,
    };
    // twiddles for the largest stage; smaller stages stride through them
    let half = n / 2;
    let twiddles: Vec<C64> =
        (0..half).map(|k| C64::from_polar(1.0, sign * TAU * k as f64 / n as f64)).collect();

    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = twiddles[k * stride];
                let a = data[start + k];
                let b = data[start + k + len / 2] * w;
                data[start + k] = a + b;
                data[start + k + len / 2] = a - b;
            }
        }
        len <<= 1;
    }

    if direction == FftDirection::Inverse {
        let inv = 1.0 / n as f64;
        for z in data.iter_mut() {
            *z *= inv;
        }
    }
    Ok(())
}
