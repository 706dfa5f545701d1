mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use workdist::numerics::*;
use workdist::C64;

#[test]
fn oracle_reproduces_known_erf_values() {
    assert!((erf_oracle(C64::new(1.0, 0.0)).re - 0.842_700_792_949_714_9).abs() < 1e-16);
    assert!((erf_oracle(C64::new(0.5, 0.0)).re - 0.520_499_877_813_046_5).abs() < 1e-16);
}

#[test]
fn eig_reconstructs_random_hermitian_4x4() {
    let mut r = rng(7);
    let h = random_hermitian(&mut r, 4);
    let sp = eig_hermitian(&h, HERMITIAN_TOL).unwrap();
    let residual = sp.reconstruct().max_abs_diff(&h);
    assert!(residual <= 1e-10 * h.frobenius_norm(), "residual {residual:e}");
    assert!(sp.values.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn eig_large_dimension_residuals() {
    let mut r = rng(11);
    for n in [8, 16, 32, 64] {
        let h = random_hermitian(&mut r, n);
        let sp = eig_hermitian(&h, HERMITIAN_TOL).unwrap();
        let norm = h.frobenius_norm();
        assert!(sp.reconstruct().max_abs_diff(&h) <= 1e-10 * norm);
        assert!(sp.vectors.unitary_deviation() <= 1e-10);
        for i in 0..n {
            let v = sp.vector(i);
            let hv = h.apply(&v);
            let res: f64 = hv.iter().zip(&v).map(|(a, b)| (a - b * sp.values[i]).norm_sqr()).sum::<f64>().sqrt();
            assert!(res <= 1e-10 * norm, "n={n} i={i} residual {res:e}");
        }
    }
}

#[test]
fn eig_phase_convention_is_deterministic() {
    let mut r = rng(3);
    let h = random_hermitian(&mut r, 6);
    let a = eig_hermitian(&h, HERMITIAN_TOL).unwrap();
    let b = eig_hermitian(&h, HERMITIAN_TOL).unwrap();
    assert_eq!(a, b);
    for i in 0..6 {
        let first = a.vector(i).into_iter().find(|z| z.norm() > 1e-12).unwrap();
        assert!(first.im.abs() < 1e-15 && first.re > 0.0);
    }
}

#[test]
fn fft_matches_direct_dft_length_32() {
    let mut r = rng(32);
    let x: Vec<C64> = (0..32).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    let fast = fft_radix2(&x, FftDirection::Forward).unwrap();
    let slow = direct_dft(&x);
    for (a, b) in fast.iter().zip(&slow) {
        assert!((a - b).norm() < 1e-10);
    }
}

#[test]
fn fft_round_trip_length_64() {
    let mut r = rng(64);
    let x: Vec<C64> = (0..64).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    let y = fft_radix2(&x, FftDirection::Forward).unwrap();
    let back = fft_radix2(&y, FftDirection::Inverse).unwrap();
    for (a, b) in x.iter().zip(&back) {
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn erf_at_one_matches_oracle() {
    let v = erf_complex(C64::new(1.0, 0.0));
    assert!((v - erf_oracle(C64::new(1.0, 0.0))).norm() < 1e-12);
    assert!((v.re - 0.842_700_792_9).abs() < 1e-10);
}

#[test]
fn erf_at_two_plus_i_matches_oracle() {
    let z = C64::new(2.0, 1.0);
    let v = erf_complex(z);
    let o = erf_oracle(z);
    assert!((v - o).norm() < 1e-10, "{v} vs {o}");
}

#[test]
fn erf_switch_points_agree() {
    // both routes where they overlap: |z| slightly above 3 with Re z >= 2
    for k in 0..=40 {
        let angle = -0.8 + 1.6 * k as f64 / 40.0;
        let z = C64::from_polar(3.05, angle);
        if z.re < 2.0 {
            continue;
        }
        let via_fraction = erf_complex(z);
        let o = erf_oracle(z);
        assert!((via_fraction - o).norm() <= 1e-11 * o.norm().max(1.0), "z={z}");
    }
    // both sides of the Re z = 2 seam
    for k in 0..=20 {
        let y = 2.3 + 0.2 * k as f64;
        for x in [2.0 - 1e-9, 2.0] {
            let z = C64::new(x, y);
            let o = erf_oracle(z);
            let v = erf_complex(z);
            assert!((v - o).norm() <= 1e-11 * o.norm().max(1.0), "z={z}: {v} vs {o}");
        }
    }
}

#[test]
fn unitary_from_bloch_matches_taylor_series() {
    let mut r = rng(5);
    for _ in 0..20 {
        let n = [r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)];
        let gen = &(&pauli_x().scale(C64::new(n[0], 0.0)) + &pauli_y().scale(C64::new(n[1], 0.0)))
            + &pauli_z().scale(C64::new(n[2], 0.0));
        let oracle = taylor_exp(&gen.scale(C64::new(0.0, -1.0)), 30);
        let u = unitary_from_bloch(n);
        // 30 terms suffice for |n| <= 2√3 at this tolerance
        assert!(u.max_abs_diff(&oracle) < 1e-12);
        assert!(u.is_unitary(1e-12));
    }
}

#[test]
fn bloch_closed_form_at_quarter_turn() {
    let u = unitary_from_bloch([FRAC_PI_2, 0.0, 0.0]);
    assert!(u.max_abs_diff(&pauli_x().scale(C64::new(0.0, -1.0))) < 1e-15);
    let v = unitary_from_bloch([PI / 4.0, 0.0, 0.0]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((v[(0, 0)] - C64::new(h, 0.0)).norm() < 1e-15);
    assert!((v[(0, 1)] - C64::new(0.0, -h)).norm() < 1e-15);
}

fn complex_in_disc(radius: f64) -> impl Strategy<Value = C64> {
    (0.0..radius, -PI..PI).prop_map(|(r, a)| C64::from_polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_reconstruction(seed in any::<u64>(), n in 1usize..=12) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, n);
        let sp = eig_hermitian(&h, HERMITIAN_TOL).unwrap();
        prop_assert!(sp.reconstruct().max_abs_diff(&h) <= 1e-10 * h.frobenius_norm().max(1e-300));
    }

    #[test]
    fn fft_parseval(seed in any::<u64>(), log_n in 0u32..=10) {
        let mut r = rng(seed);
        let n = 1usize << log_n;
        let x: Vec<C64> = (0..n).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
        let y = fft_radix2(&x, FftDirection::Forward).unwrap();
        let ex: f64 = x.iter().map(C64::norm_sqr).sum();
        let ey: f64 = y.iter().map(C64::norm_sqr).sum::<f64>() / n as f64;
        prop_assert!((ex - ey).abs() <= 1e-10 * ex);
    }

    #[test]
    fn erf_symmetries(z in complex_in_disc(5.0)) {
        let w = erf_complex(z);
        prop_assert!((erf_complex(-z) + w).norm() <= 1e-12 * w.norm().max(1.0));
        prop_assert!((erf_complex(z.conj()) - w.conj()).norm() <= 1e-12 * w.norm().max(1.0));
    }

    #[test]
    fn bloch_inverse(x in -3.0..3.0f64, y in -3.0..3.0f64, z in -3.0..3.0f64) {
        let u = unitary_from_bloch([x, y, z]);
        let v = unitary_from_bloch([-x, -y, -z]);
        prop_assert!((&u * &v).max_abs_diff(&ComplexMatrix::identity(2)) <= 1e-12);
    }
}
