//! Scheme A on the flagship qubit: a coherent initial state driven by a
//! quarter-turn about x. Prints the atoms, their classical and interference
//! parts, the moments by three routes and the FFT-broadened density.

use std::f64::consts::FRAC_PI_4;

use workdist::scheme_a::*;
use workdist::system::{classical_tmp_distribution, dephase, qubit_scenario, transition_table, InitialState};

fn main() -> workdist::Result<()> {
    let table = transition_table(&qubit_scenario(1.0, [FRAC_PI_4, 0.0, 0.0])?)?;
    let state = InitialState::from_bloch([0.0, 1.0, 0.0])?;
    let sum = characteristic_function(&state, &table)?;
    let dist = quasiprobability(&sum)?;

    println!("{:>6} {:>10} {:>10} {:>12}", "W", "P(W)", "classical", "interference");
    for atom in dist.atoms() {
        let part = |atoms: &[WorkAtom]| atoms.iter().find(|a| a.work == atom.work).map_or(0.0, |a| a.weight);
        println!(
            "{:>6.2} {:>10.4} {:>10.4} {:>12.4}",
            atom.work,
            atom.weight,
            part(dist.classical_part()),
            part(dist.interference_part())
        );
    }
    println!("negativity {:.4}", negativity(&dist));

    let step = default_fd_step(&sum);
    for n in 1..=4 {
        println!(
            "<W^{n}>: atoms {:.6}  analytic {:.6}  finite differences {:.6}",
            dist.moment(n as u32),
            moments_analytic(&sum, n)?,
            moments_finite_difference(&sum, n, step)?
        );
    }

    let dephased = dephase(&state, &table.basis0)?;
    let tmp = classical_tmp_distribution(&dephased, &table)?;
    println!("two-measurement distribution has {} atoms, all non-negative: {}", tmp.atoms().len(), tmp.negativity() == 0.0);

    let params = FftReconstruction { lambda_max: 160.0, samples: 1024, window_sigma: 0.05 };
    let density = reconstruct_fft(&sum, &params)?;
    for (atom, (area, centroid)) in dist.atoms().iter().zip(density.atom_cells(&dist, params.window_sigma)) {
        println!("FFT cell near W={:+.2}: area {area:+.4} centroid {centroid:+.4} (exact {:+.4})", atom.work, atom.weight);
    }
    Ok(())
}
