//! When does the coherent probe see interference? Compares the angular
//! distribution of a coherent initial state with its dephased twin across
//! probe amplitudes and coupling strengths, next to the overlap predicate.

use std::f64::consts::FRAC_PI_4;

use workdist::cqed::*;
use workdist::numerics::unitary_from_bloch;
use workdist::system::{dephase, qubit_scenario, transition_table, InitialState};

fn main() -> workdist::Result<()> {
    let rotation = [FRAC_PI_4, 0.0, 0.0];
    let coherent = InitialState::from_bloch([0.0, 1.0, 0.0])?;
    let table = transition_table(&qubit_scenario(1.0, rotation)?)?;
    let dephased = dephase(&coherent, &table.basis0)?;
    let u = unitary_from_bloch(rotation);
    let thetas = uniform_theta_grid(DEFAULT_THETA_POINTS);

    println!("{:>5} {:>5} {:>12} {:>10}", "alpha", "phi", "max |diff|", "overlap");
    for alpha in [1.5, 2.5, 5.0] {
        for phi in [0.1, 0.3, 0.5, 0.7] {
            let params = DispersiveParams::new(phi, alpha, None)?;
            let a = angular_distribution(&coherent, &u, &params, &thetas)?;
            let b = angular_distribution(&dephased, &u, &params, &thetas)?;
            println!(
                "{alpha:>5} {phi:>5} {:>12.3e} {:>10}",
                a.max_abs_diff(&b),
                interference_predicate(&params, 2.0)
            );
        }
    }
    Ok(())
}
