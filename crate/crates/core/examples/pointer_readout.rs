//! Scheme B: a Gaussian pointer records the injected energy. Sweeping its
//! width shows the crossover from resolved two-measurement peaks to a
//! single blurred, interference-bearing bump.

use std::f64::consts::FRAC_PI_4;

use workdist::pointer::*;
use workdist::system::{qubit_scenario, transition_table, InitialState};

fn main() -> workdist::Result<()> {
    let table = transition_table(&qubit_scenario(1.0, [FRAC_PI_4, 0.0, 0.0])?)?;
    let state = InitialState::from_bloch([0.0, 1.0, 0.0])?;

    for sigma in [0.05, 0.25, 1.0, 3.0] {
        let pointer = GaussianPointer::new(0.0, sigma, 1.0)?;
        let grid = default_grid(&table, &pointer, DEFAULT_GRID_POINTS);
        let dist = pointer_distribution(&state, &table, &pointer, &grid)?;
        let peak = dist.density.iter().cloned().fold(f64::MIN, f64::max);
        println!(
            "sigma {sigma:<5} resolution {:>6.2}  integral {:.6}  peak {peak:.4}  min {:+.2e}",
            interference_overlap_scale(&table, &pointer)?,
            dist.integral(),
            dist.min_density()
        );
    }

    let sharp = GaussianPointer::new(0.0, 0.02, 1.0)?;
    let limit = delta_pointer_limit(&state, &table, &sharp)?;
    let dist = pointer_distribution(&state, &table, &sharp, &default_grid(&table, &sharp, 8192))?;
    println!("sharp pointer areas against the two-measurement weights:");
    for atom in limit.atoms() {
        let area = dist.area_between(atom.work - 4.0 * sharp.sigma, atom.work + 4.0 * sharp.sigma);
        println!("  x = {:+.2}: area {area:.6}, expected {:.6}", atom.work, atom.weight);
    }
    Ok(())
}
