//! Scheme A in a cavity: the qubit imprints its energy on the relative phase
//! of a two-component Fock superposition. The coherence between the photon
//! numbers either side of the mean reproduces the qubit characteristic
//! function once the photon-number phase is stripped.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use workdist::cqed::*;
use workdist::numerics::unitary_from_bloch;
use workdist::scheme_a::quasiprobability;
use workdist::system::InitialState;
use workdist::C64;

fn main() -> workdist::Result<()> {
    let state = InitialState::from_bloch([0.0, 1.0, 0.0])?;
    let u = unitary_from_bloch([FRAC_PI_4, 0.0, 0.0]);
    let nbar = 3;

    let sum = cqed_characteristic_function(&state, &u)?;
    for atom in quasiprobability(&sum)?.atoms() {
        println!("atom {:+.2} weight {:+.4}", atom.work, atom.weight);
    }

    let cutoff = DispersiveParams::new(0.0, 0.0, None)?.fock_cutoff();
    let mut fock = vec![C64::new(0.0, 0.0); cutoff + 1];
    fock[nbar - 1] = C64::new(FRAC_1_SQRT_2, 0.0);
    fock[nbar + 1] = C64::new(FRAC_1_SQRT_2, 0.0);
    for phi in [0.0, 0.25, 0.5, 1.0] {
        let params = DispersiveParams::new(phi, 0.0, Some(cutoff))?;
        let cavity = cavity_state_after_protocol(&state, &u, &fock, &params)?;
        let coherence = cavity.entries[(nbar - 1, nbar + 1)] / (fock[nbar - 1] * fock[nbar + 1].conj());
        let raw = raw_fock_coherence(&state, &u, phi, nbar - 1, nbar + 1)?;
        println!(
            "phi {phi:.2}: cavity coherence {coherence:.4}  raw formula {raw:.4}  stripped G(2phi) {:.4}",
            sum.evaluate_control(phi)
        );
    }
    Ok(())
}
