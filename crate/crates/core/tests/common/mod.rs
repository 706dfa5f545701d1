//! Shared test helpers: seeded random states and unitaries, plus independent
//! oracles that do not go through the library's numerical paths.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workdist::numerics::ComplexMatrix;
use workdist::C64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box–Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
    ComplexMatrix::from_row_major(rows, cols, data).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_complex_matrix(rng, n, n);
    (&a + &a.adjoint()).scale(C64::new(0.5, 0.0))
}

/// Haar-ish unitary from modified Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_complex_matrix(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut v = a.column(c);
        for q in &cols {
            let proj: C64 = q.iter().zip(&v).map(|(qi, vi)| qi.conj() * vi).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (c, col) in cols.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            u[(r, c)] = *z;
        }
    }
    u
}

/// Full-rank random density matrix `A A† / Tr(A A†)`.
pub fn random_density(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_complex_matrix(rng, n, n);
    let p = &a * &a.adjoint();
    let tr = p.trace().re;
    p.scale(C64::new(1.0 / tr, 0.0))
}

pub fn random_pure(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let v: Vec<C64> = (0..n).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
    let norm = v.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
    let v: Vec<C64> = v.into_iter().map(|z| z / norm).collect();
    ComplexMatrix::outer(&v, &v)
}

/// Direct `O(n²)` DFT with the forward sign convention `e^{-2πi kn/N}`.
pub fn direct_dft(x: &[C64]) -> Vec<C64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, xj)| {
                    let angle = -std::f64::consts::TAU * ((k * j) % n) as f64 / n as f64;
                    xj * C64::from_polar(1.0, angle)
                })
                .sum()
        })
        .collect()
}

/// Truncated Taylor series of `exp(M)`.
pub fn taylor_exp(m: &ComplexMatrix, terms: usize) -> ComplexMatrix {
    let n = m.rows();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..terms {
        term = (&term * m).scale(C64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
    }
    sum
}

// ---------------------------------------------------------------------------
// Fixed-point arbitrary precision oracle for erf(z).

const FRAC_BITS: u32 = 400;

#[derive(Clone)]
struct Fixed(BigInt);

impl Fixed {
    fn one() -> Self {
        Fixed(BigInt::one() << FRAC_BITS)
    }

    fn from_f64(x: f64) -> Self {
        // exact: x = mantissa * 2^exp
        if x == 0.0 {
            return Fixed(BigInt::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let mant = if exp == 0 { (bits & 0xf_ffff_ffff_ffff) << 1 } else { (bits & 0xf_ffff_ffff_ffff) | (1 << 52) };
        let shift = exp - 1075 + FRAC_BITS as i64;
        let m = BigInt::from(mant) * sign;
        Fixed(if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize })
    }

    fn mul(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * &o.0) >> FRAC_BITS)
    }

    fn div_int(&self, d: i64) -> Fixed {
        Fixed(&self.0 / d)
    }

    fn div(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 << FRAC_BITS) / &o.0)
    }

    fn to_f64(&self) -> f64 {
        let shifted: BigInt = &self.0 >> (FRAC_BITS - 64);
        shifted.to_f64().unwrap() / 2f64.powi(64)
    }

    fn is_negligible(&self) -> bool {
        self.0.abs() < (BigInt::one() << (FRAC_BITS - 330))
    }
}

fn atan_inv(x: i64) -> Fixed {
    // atan(1/x) = Σ (-1)^k / ((2k+1) x^{2k+1})
    let mut power = Fixed::one().div_int(x);
    let mut sum = power.clone();
    let x2 = x * x;
    let mut k = 1i64;
    loop {
        power = power.div_int(x2);
        if power.0.is_zero() {
            break;
        }
        let term = power.div_int(2 * k + 1);
        if k % 2 == 1 {
            sum = Fixed(&sum.0 - &term.0);
        } else {
            sum = Fixed(&sum.0 + &term.0);
        }
        k += 1;
    }
    sum
}

/// `2/√π` from Machin's formula and an integer square root.
fn two_over_sqrt_pi() -> Fixed {
    let pi = Fixed(&atan_inv(5).0 * 16 - &atan_inv(239).0 * 4);
    let sqrt_pi = Fixed((pi.0 << FRAC_BITS).sqrt());
    Fixed(BigInt::from(2) << FRAC_BITS).div(&sqrt_pi)
}

/// erf(z) by the Maclaurin series in 400-bit fixed point.
pub fn erf_oracle(z: C64) -> C64 {
    let (zr, zi) = (Fixed::from_f64(z.re), Fixed::from_f64(z.im));
    // -z²
    let mzr = Fixed(-(&zr.mul(&zr).0 - &zi.mul(&zi).0));
    let mzi = Fixed(-(zr.mul(&zi).0 * BigInt::from(2)));
    let (mut tr, mut ti) = (zr.clone(), zi.clone());
    let (mut sr, mut si) = (zr, zi);
    let mut n = 1i64;
    loop {
        let nr = Fixed(&tr.mul(&mzr).0 - &ti.mul(&mzi).0).div_int(n);
        let ni = Fixed(&tr.mul(&mzi).0 + &ti.mul(&mzr).0).div_int(n);
        tr = nr;
        ti = ni;
        let cr = tr.div_int(2 * n + 1);
        let ci = ti.div_int(2 * n + 1);
        sr = Fixed(&sr.0 + &cr.0);
        si = Fixed(&si.0 + &ci.0);
        if n > 60 && cr.is_negligible() && ci.is_negligible() {
            break;
        }
        n += 1;
    }
    let k = two_over_sqrt_pi();
    C64::new(sr.mul(&k).to_f64(), si.mul(&k).to_f64())
}

/// `exp(M)` by scaling and squaring around a Taylor series.
pub fn expm(m: &ComplexMatrix) -> ComplexMatrix {
    let norm = m.frobenius_norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m.scale(C64::new(0.5f64.powi(squarings as i32), 0.0));
    let mut e = taylor_exp(&scaled, 20);
    for _ in 0..squarings {
        e = &e * &e;
    }
    e
}

/// `Tr[e^{iλH_T} U e^{-iλH_0/2} ρ e^{-iλH_0/2} U†]`, the characteristic
/// function written without any eigendecomposition.
pub fn trace_characteristic(h0: &ComplexMatrix, ht: &ComplexMatrix, u: &ComplexMatrix, rho: &ComplexMatrix, lambda: f64) -> C64 {
    let half = expm(&h0.scale(C64::new(0.0, -0.5 * lambda)));
    let fin = expm(&ht.scale(C64::new(0.0, lambda)));
    let inner = &(&half * rho) * &half;
    let evolved = &(&(u * &inner) * &u.adjoint()) * &fin;
    evolved.trace()
}

pub struct RandomCase {
    pub h0: ComplexMatrix,
    pub ht: ComplexMatrix,
    pub u: ComplexMatrix,
    pub rho: ComplexMatrix,
}

/// Random Hamiltonians, drive, and mixed state in dimension `d`.
pub fn random_case(rng: &mut impl Rng, d: usize) -> RandomCase {
    RandomCase {
        h0: random_hermitian(rng, d),
        ht: random_hermitian(rng, d),
        u: random_unitary(rng, d),
        rho: random_density(rng, d),
    }
}
