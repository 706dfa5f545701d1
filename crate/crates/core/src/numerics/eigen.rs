//! Cyclic Jacobi diagonalization of small dense Hermitian matrices.

use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Components below this magnitude are skipped when fixing eigenvector phases.
const PHASE_PIVOT_TOL: f64 = 1e-12;

/// Eigen-decomposition of a Hermitian matrix.
///
/// `values` are ascending and `vectors` holds the matching orthonormal
/// eigenvectors as columns. Each column is phased so that its first component
/// with magnitude above `1e-12` is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPair {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl SpectralPair {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i)
    }

    /// `V diag(values) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for r in 0..n {
            for c in 0..n {
                scaled[(r, c)] *= self.values[c];
            }
        }
        &scaled * &self.vectors.adjoint()
    }

    /// Matrix elements `<v_i| M |v_k>` in this eigenbasis.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &(&self.vectors.adjoint() * m) * &self.vectors
    }

    /// Inverse of [`SpectralPair::to_eigenbasis`].
    pub fn from_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &(&self.vectors * m) * &self.vectors.adjoint()
    }
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations.
///
/// Fails with [`Error::NonHermitian`] if `max |H - H^dagger| > tol` and with
/// [`Error::NoConvergence`] if the off-diagonal mass has not collapsed after
/// [`MAX_JACOBI_SWEEPS`] sweeps.
pub fn eig_hermitian(h: &ComplexMatrix, tol: f64) -> Result<SpectralPair> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigensolver needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let deviation = h.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NonHermitian { deviation });
    }
    let n = h.rows();

    // work on the exactly Hermitian part
    let mut a = (h + &h.adjoint()).scale(C64::new(0.5, 0.0));
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    let threshold = 1e-15 * scale;
    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));

    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = v.column(src);
        let phase = col
            .iter()
            .find(|z| z.norm() > PHASE_PIVOT_TOL)
            .map_or(C64::new(1.0, 0.0), |z| z.conj() / z.norm());
        for (r, z) in col.iter().enumerate() {
            vectors[(r, dst)] = z * phase;
        }
    }
    Ok(SpectralPair { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += a[(p, q)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[p][q]` with the unitary plane rotation
/// `G = [[c, s e^{iφ}], [-s e^{-iφ}, c]]` on the `(p, q)` plane,
/// `a <- G^dagger a G`, `v <- v G`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // skip rotations that cannot change the diagonal in floating point
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let g_pq = phase * s;
    let g_qp = -phase.conj() * s;

    // columns: a <- a G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * c;
    }
    // rows: a <- G^dagger a
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * g_qp.conj();
        a[(q, k)] = apk * g_pq.conj() + aqk * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * c;
    }
}
