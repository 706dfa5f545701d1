//! Error function of a complex argument.
//!
//! Two evaluation routes are used on the half plane `Re z >= 0`; the other
//! half follows from `erf(-z) = -erf(z)`:
//!
//! * Maclaurin series `erf z = (2/√π) Σ (-1)^n z^{2n+1} / (n! (2n+1))`. Its
//!   cancellation grows like `exp(min(|z|², 2 Re(z)²))`, so it is used for
//!   `|z| <= 3` and for any argument close to the imaginary axis
//!   (`Re z < 2`).
//! * The Laplace continued fraction of the Faddeeva-type kernel,
//!   `erfc z = e^{-z²}/√π · 1/(z + ½/(z + 1/(z + (3/2)/(z + …))))`, everywhere
//!   else. It converges quickly once `Re z` is bounded away from zero.

use std::f64::consts::FRAC_2_SQRT_PI;

use num_complex::Complex64 as C64;

/// Beyond this radius the continued fraction (asymptotic regime) is used
/// unconditionally and the result saturates to its limiting value.
pub const ERF_DOMAIN_RADIUS: f64 = 50.0;

const SERIES_RADIUS: f64 = 3.0;
const SERIES_MAX_REAL: f64 = 2.0;
const MAX_SERIES_TERMS: usize = 20_000;
const MAX_FRACTION_TERMS: usize = 20_000;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// `erf(z)` for complex `z`.
pub fn erf_complex(z: C64) -> C64 {
    if z.re < 0.0 {
        return -erf_complex(-z);
    }
    if z.re == 0.0 && z.im < 0.0 {
        // keep exact oddness on the imaginary axis
        return -erf_complex(-z);
    }
    if use_series(z) {
        series(z)
    } else {
        one() - erfc_fraction(z)
    }
}

/// `erfc(z) = 1 - erf(z)`, accurate in the tail `Re z >> 1`.
pub fn erfc_complex(z: C64) -> C64 {
    if z.re < 0.0 {
        return C64::new(2.0, 0.0) - erfc_complex(-z);
    }
    if use_series(z) {
        one() - series(z)
    } else {
        erfc_fraction(z)
    }
}

fn use_series(z: C64) -> bool {
    let r = z.norm();
    r <= SERIES_RADIUS || (z.re < SERIES_MAX_REAL && r <= ERF_DOMAIN_RADIUS)
}

fn series(z: C64) -> C64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let threshold = z2.norm();
    for n in 1..MAX_SERIES_TERMS {
        term *= -z2 / n as f64;
        let contribution = term / (2 * n + 1) as f64;
        sum += contribution;
        if n as f64 > threshold && contribution.norm() <= 1e-17 * sum.norm() {
            break;
        }
        if !sum.re.is_finite() || !sum.im.is_finite() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

/// `erfc(z)` for `Re z > 0` from the continued fraction, evaluated with the
/// modified Lentz algorithm.
fn erfc_fraction(z: C64) -> C64 {
    const TINY: f64 = 1e-300;
    let tiny = C64::new(TINY, 0.0);
    let mut f = if z.norm() == 0.0 { tiny } else { z };
    let mut c = f;
    let mut d = C64::new(0.0, 0.0);
    for n in 1..MAX_FRACTION_TERMS {
        let a = n as f64 * 0.5;
        d = z + d * a;
        if d.norm() < TINY {
            d = tiny;
        }
        c = z + c.inv() * a;
        if c.norm() < TINY {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - one()).norm() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / f * (FRAC_2_SQRT_PI * 0.5)
}
