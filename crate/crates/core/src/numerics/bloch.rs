use num_complex::Complex64 as C64;

use super::ComplexMatrix;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
        .expect("2x2")
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
        .expect("2x2")
}

/// `σ_z = diag(+1, -1)`; `|0>` is the `+1` eigenstate.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
        .expect("2x2")
}

/// `exp(-i n·σ) = cos|n| I - i sin|n| (n̂·σ)`.
pub fn unitary_from_bloch(n: [f64; 3]) -> ComplexMatrix {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if norm == 0.0 {
        return ComplexMatrix::identity(2);
    }
    let (sin, cos) = norm.sin_cos();
    let [nx, ny, nz] = n.map(|x| x / norm);
    // -i sin (nx σx + ny σy + nz σz)
    let data = vec![
        c(cos, -sin * nz),
        c(-sin * ny, -sin * nx),
        c(sin * ny, -sin * nx),
        c(cos, sin * nz),
    ];
    ComplexMatrix::from_row_major(2, 2, data).expect("2x2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_rotation_is_identity() {
        assert_eq!(unitary_from_bloch([0.0; 3]), ComplexMatrix::identity(2));
    }

    #[test]
    fn quarter_turn_about_x_is_minus_i_sigma_x() {
        let u = unitary_from_bloch([FRAC_PI_2, 0.0, 0.0]);
        let expected = pauli_x().scale(c(0.0, -1.0));
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn rotation_about_z_is_diagonal_phase() {
        let u = unitary_from_bloch([0.0, 0.0, 0.3]);
        assert!((u[(0, 0)] - C64::from_polar(1.0, -0.3)).norm() < 1e-15);
        assert!((u[(1, 1)] - C64::from_polar(1.0, 0.3)).norm() < 1e-15);
        assert_eq!(u[(0, 1)], c(0.0, 0.0));
    }
}
