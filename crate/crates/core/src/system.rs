//! The driven system: Hamiltonians before and after the drive, the net drive
//! unitary, initial states, and the transition amplitudes between the two
//! energy eigenbases.
//!
//! Qubit Hamiltonians follow the convention `H = (ω_a/2) σ_z`, so the two
//! levels sit at `±ω_a/2` and a full flip exchanges one quantum `ω_a`.
//!
//! The first moment of work produced by these amplitudes is
//! `Tr[ρ (U† H(T) U - H(0))]`, the Heisenberg-picture energy change.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian, pauli_z, unitary_from_bloch, ComplexMatrix, SpectralPair};
use crate::numerics::{HERMITIAN_TOL, UNITARY_TOL};
use crate::scheme_a::{aggregate, WorkAtom, WorkQuasiDistribution, NEGLIGIBLE_AMPLITUDE};

/// Tolerance on `Tr ρ = 1`.
pub const TRACE_TOL: f64 = 1e-12;
/// Lowest eigenvalue tolerated in a density matrix.
pub const POSITIVITY_TOL: f64 = -1e-10;

/// `H(0)`, `H(T)` and the net drive unitary `U_S(T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemScenario {
    h0: ComplexMatrix,
    ht: ComplexMatrix,
    u: ComplexMatrix,
}

impl SystemScenario {
    pub fn new(h0: ComplexMatrix, ht: ComplexMatrix, u: ComplexMatrix) -> Result<Self> {
        let d = h0.rows();
        for (name, m) in [("H(0)", &h0), ("H(T)", &ht), ("U", &u)] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if d < 2 {
            return Err(Error::DimensionMismatch("system dimension must be at least 2".into()));
        }
        for m in [&h0, &ht] {
            let deviation = m.hermitian_deviation();
            if deviation > HERMITIAN_TOL {
                return Err(Error::NonHermitian { deviation });
            }
        }
        let deviation = u.unitary_deviation();
        if deviation > UNITARY_TOL {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(Self { h0, ht, u })
    }

    pub fn dim(&self) -> usize {
        self.h0.rows()
    }

    pub fn h0(&self) -> &ComplexMatrix {
        &self.h0
    }

    pub fn ht(&self) -> &ComplexMatrix {
        &self.ht
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }

    /// `U† H(T) U - H(0)`; its expectation value is the mean work.
    pub fn work_operator(&self) -> ComplexMatrix {
        let heisenberg = &(&self.u.adjoint() * &self.ht) * &self.u;
        &heisenberg - &self.h0
    }
}

/// Qubit with `H(0) = H(T) = (ω_a/2) σ_z` driven by `exp(-i n·σ)`.
pub fn qubit_scenario(omega_a: f64, n: [f64; 3]) -> Result<SystemScenario> {
    if !(omega_a > 0.0) || !omega_a.is_finite() {
        return Err(Error::NonPositiveFrequency(omega_a));
    }
    if n.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("Bloch rotation vector must be finite".into()));
    }
    let h = pauli_z().scale(C64::new(0.5 * omega_a, 0.0));
    SystemScenario::new(h.clone(), h, unitary_from_bloch(n))
}

/// A validated density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    rho: ComplexMatrix,
}

impl InitialState {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn from_matrix(rho: ComplexMatrix) -> Result<Self> {
        let deviation = rho.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NonHermitian { deviation });
        }
        let trace = rho.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {trace}, expected 1")));
        }
        let spectrum = eig_hermitian(&rho, HERMITIAN_TOL)?;
        if let Some(&lowest) = spectrum.values.first() {
            if lowest < POSITIVITY_TOL {
                return Err(Error::InvalidState(format!("negative eigenvalue {lowest:e}")));
            }
        }
        Ok(Self { rho })
    }

    /// `(I + r·σ)/2` for a Bloch vector with `|r| <= 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        if r.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidState("Bloch vector must be finite".into()));
        }
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if len > 1.0 + 1e-12 {
            return Err(Error::InvalidState(format!("Bloch vector length {len} exceeds 1")));
        }
        let half = |re: f64, im: f64| C64::new(0.5 * re, 0.5 * im);
        let rho = ComplexMatrix::from_row_major(
            2,
            2,
            vec![half(1.0 + r[2], 0.0), half(r[0], -r[1]), half(r[0], r[1]), half(1.0 - r[2], 0.0)],
        )?;
        Ok(Self { rho })
    }

    /// `|ψ><ψ|` for a normalized state vector.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(C64::norm_sqr).sum();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("state vector has norm² {norm}")));
        }
        Ok(Self { rho: ComplexMatrix::outer(psi, psi) })
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "state has dimension {}, expected {d}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Removes every coherence between eigenvectors of `basis`.
pub fn dephase(state: &InitialState, basis: &SpectralPair) -> Result<InitialState> {
    state.check_dim(basis.dim())?;
    let mut in_basis = basis.to_eigenbasis(&state.rho);
    let d = basis.dim();
    for i in 0..d {
        for k in 0..d {
            if i != k {
                in_basis[(i, k)] = C64::new(0.0, 0.0);
            }
        }
        in_basis[(i, i)] = C64::new(in_basis[(i, i)].re, 0.0);
    }
    Ok(InitialState { rho: basis.from_eigenbasis(&in_basis) })
}

/// Transition amplitudes `<ε_j^T| U |ε_i^0>` with both eigenbases.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable {
    /// Entry `(j, i)` is the amplitude from initial level `i` to final level `j`.
    pub amplitudes: ComplexMatrix,
    pub basis0: SpectralPair,
    pub basis_t: SpectralPair,
}

impl TransitionTable {
    pub fn dim(&self) -> usize {
        self.amplitudes.rows()
    }

    /// Initial energies, ascending.
    pub fn eps0(&self) -> &[f64] {
        &self.basis0.values
    }

    /// Final energies, ascending.
    pub fn eps_t(&self) -> &[f64] {
        &self.basis_t.values
    }

    /// `ρ_ik = <ε_i^0| ρ |ε_k^0>`.
    pub fn initial_elements(&self, state: &InitialState) -> Result<ComplexMatrix> {
        state.check_dim(self.dim())?;
        Ok(self.basis0.to_eigenbasis(state.matrix()))
    }

    /// `|U_ji|²`.
    pub fn transition_probability(&self, j: usize, i: usize) -> f64 {
        self.amplitudes[(j, i)].norm_sqr()
    }
}

pub fn transition_table(scenario: &SystemScenario) -> Result<TransitionTable> {
    let basis0 = eig_hermitian(&scenario.h0, HERMITIAN_TOL)?;
    let basis_t = eig_hermitian(&scenario.ht, HERMITIAN_TOL)?;
    let amplitudes = &(&basis_t.vectors.adjoint() * &scenario.u) * &basis0.vectors;
    Ok(TransitionTable { amplitudes, basis0, basis_t })
}

/// Two-measurement statistics: weight `P_i^0 |U_ji|²` at `W = ε_j^T - ε_i^0`.
pub fn classical_tmp_distribution(
    state: &InitialState,
    table: &TransitionTable,
) -> Result<WorkQuasiDistribution> {
    let rho = table.initial_elements(state)?;
    let d = table.dim();
    let mut raw = Vec::with_capacity(d * d);
    for i in 0..d {
        let p_i = rho[(i, i)].re;
        for j in 0..d {
            raw.push((table.eps_t()[j] - table.eps0()[i], p_i * table.transition_probability(j, i)));
        }
    }
    let atoms: Vec<WorkAtom> = aggregate(raw)
        .into_iter()
        .filter(|&(_, w)| w.abs() > NEGLIGIBLE_AMPLITUDE)
        .map(|(work, weight)| WorkAtom { work, weight })
        .collect();
    Ok(WorkQuasiDistribution::from_parts(atoms.clone(), atoms, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ground() -> InitialState {
        InitialState::from_bloch([0.0, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn identity_drive() {
        let s = qubit_scenario(1.0, [0.0; 3]).unwrap();
        let t = transition_table(&s).unwrap();
        assert_eq!(t.eps0(), &[-0.5, 0.5]);
        assert_eq!(s.unitary(), &ComplexMatrix::identity(2));
    }

    #[test]
    fn flip_drive_is_minus_i_sigma_x() {
        let s = qubit_scenario(1.0, [FRAC_PI_2, 0.0, 0.0]).unwrap();
        let u = s.unitary();
        assert!((u[(0, 1)] - c(0.0, -1.0)).norm() < 1e-15);
        assert!(u[(0, 0)].norm() < 1e-15);
        let t = transition_table(&s).unwrap();
        assert!((t.transition_probability(1, 0) - 1.0).abs() < 1e-15);
        assert!(t.transition_probability(0, 0) < 1e-30);
    }

    #[test]
    fn half_flip_closed_form() {
        let s = qubit_scenario(2.0, [FRAC_PI_4, 0.0, 0.0]).unwrap();
        let t = transition_table(&s).unwrap();
        assert_eq!(t.eps0(), &[-1.0, 1.0]);
        let u = s.unitary();
        assert!((u[(0, 0)] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((u[(1, 0)] - c(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);
        for j in 0..2 {
            for i in 0..2 {
                assert!((t.transition_probability(j, i) - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_non_positive_frequency() {
        assert_eq!(qubit_scenario(0.0, [0.0; 3]), Err(Error::NonPositiveFrequency(0.0)));
        assert!(matches!(qubit_scenario(-1.0, [0.0; 3]), Err(Error::NonPositiveFrequency(_))));
    }

    #[test]
    fn scenario_validation() {
        let h = pauli_z();
        let mut bad_u = ComplexMatrix::identity(2);
        bad_u[(0, 0)] = c(2.0, 0.0);
        assert!(matches!(SystemScenario::new(h.clone(), h.clone(), bad_u), Err(Error::NonUnitary { .. })));
        let big = ComplexMatrix::identity(3);
        assert!(matches!(SystemScenario::new(h.clone(), big, ComplexMatrix::identity(2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn state_validation() {
        assert!(InitialState::from_bloch([0.0, 0.0, 1.5]).is_err());
        let not_normalized = ComplexMatrix::from_real_diagonal(&[0.5, 0.4]);
        assert!(matches!(InitialState::from_matrix(not_normalized), Err(Error::InvalidState(_))));
        let negative = ComplexMatrix::from_real_diagonal(&[1.2, -0.2]);
        assert!(matches!(InitialState::from_matrix(negative), Err(Error::InvalidState(_))));
        assert!(InitialState::pure(&[c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn dephasing_plus_state() {
        let basis = eig_hermitian(&pauli_z(), 1e-12).unwrap();
        let plus = InitialState::from_bloch([1.0, 0.0, 0.0]).unwrap();
        let out = dephase(&plus, &basis).unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn dephasing_fixes_diagonal_states() {
        let basis = eig_hermitian(&pauli_z(), 1e-12).unwrap();
        let diag = InitialState::from_matrix(ComplexMatrix::from_real_diagonal(&[0.3, 0.7])).unwrap();
        assert_eq!(dephase(&diag, &basis).unwrap(), diag);
    }

    #[test]
    fn dephasing_y_state_halves_purity() {
        let basis = eig_hermitian(&pauli_z(), 1e-12).unwrap();
        let y = InitialState::from_bloch([0.0, 1.0, 0.0]).unwrap();
        assert!((y.purity() - 1.0).abs() < 1e-15);
        let out = dephase(&y, &basis).unwrap();
        // oracle: zero the off-diagonal entries by hand
        let mut expected = y.matrix().clone();
        expected[(0, 1)] = c(0.0, 0.0);
        expected[(1, 0)] = c(0.0, 0.0);
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
        assert!((out.purity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dephase_dimension_mismatch() {
        let basis = eig_hermitian(&ComplexMatrix::identity(3), 1e-12).unwrap();
        assert!(matches!(dephase(&ground(), &basis), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tmp_no_work_without_drive() {
        let t = transition_table(&qubit_scenario(1.0, [0.0; 3]).unwrap()).unwrap();
        let dist = classical_tmp_distribution(&ground(), &t).unwrap();
        assert_eq!(dist.atoms(), &[WorkAtom { work: 0.0, weight: 1.0 }]);
    }

    #[test]
    fn tmp_deterministic_absorption() {
        let t = transition_table(&qubit_scenario(1.0, [FRAC_PI_2, 0.0, 0.0]).unwrap()).unwrap();
        let dist = classical_tmp_distribution(&ground(), &t).unwrap();
        let atoms: Vec<_> = dist.atoms().iter().filter(|a| a.weight > 1e-15).collect();
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].work, 1.0);
        assert!((atoms[0].weight - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tmp_maximally_mixed_half_flip() {
        let t = transition_table(&qubit_scenario(1.0, [FRAC_PI_4, 0.0, 0.0]).unwrap()).unwrap();
        let mixed = InitialState::from_bloch([0.0; 3]).unwrap();
        let dist = classical_tmp_distribution(&mixed, &t).unwrap();
        // enumeration: P_i = 1/2, P_{i->j} = 1/2
        let expected = [(-1.0, 0.25), (0.0, 0.5), (1.0, 0.25)];
        assert_eq!(dist.atoms().len(), 3);
        for (atom, (w, p)) in dist.atoms().iter().zip(expected) {
            assert!((atom.work - w).abs() < 1e-15);
            assert!((atom.weight - p).abs() < 1e-15);
        }
    }

    #[test]
    fn tmp_dimension_mismatch() {
        let t = transition_table(&qubit_scenario(1.0, [0.0; 3]).unwrap()).unwrap();
        let three = InitialState::from_matrix(ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0])).unwrap();
        assert!(matches!(classical_tmp_distribution(&three, &t), Err(Error::DimensionMismatch(_))));
    }
}
