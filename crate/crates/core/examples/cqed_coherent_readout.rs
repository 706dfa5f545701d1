//! Scheme B in a cavity: a coherent probe rotates by an energy-dependent
//! angle. Prints a coarse Husimi-Q map, checks it against the closed form and
//! reports where the angular distribution peaks.

use std::f64::consts::FRAC_PI_4;

use workdist::cqed::*;
use workdist::numerics::unitary_from_bloch;
use workdist::system::InitialState;
use workdist::C64;

fn main() -> workdist::Result<()> {
    let state = InitialState::from_bloch([0.0, 1.0, 0.0])?;
    let u = unitary_from_bloch([FRAC_PI_4, 0.0, 0.0]);
    let params = DispersiveParams::new(0.5, 5.0, None)?;

    let fock = coherent_amplitudes(params.alpha(), params.fock_cutoff())?;
    let cavity = cavity_state_after_protocol(&state, &u, &fock, &params)?;
    println!("cutoff {}  trace {:.10}  <n> {:.4}", params.fock_cutoff(), cavity.trace(), cavity.mean_photon_number());

    let spec = HusimiGridSpec::square(params.alpha() + 4.0, 25);
    let map = husimi_q(&cavity, &spec);
    println!("Husimi-Q integral {:.6}, min {:+.2e}", map.integral(), map.min());
    let shades = [' ', '.', ':', '+', '#'];
    let top = map.values.iter().cloned().fold(0.0, f64::max);
    for iy in (0..spec.im_points).rev() {
        let row: String = (0..spec.re_points)
            .map(|ix| shades[((map.value(ix, iy) / top) * 4.0).round() as usize])
            .collect();
        println!("  |{row}|");
    }

    let xi = C64::new(4.0, 2.0);
    println!(
        "Q at {xi}: Fock space {:.3e}, closed form {:.3e}",
        husimi_at(&cavity, xi),
        husimi_closed_form(&state, &u, &params, xi)?
    );

    let thetas = uniform_theta_grid(DEFAULT_THETA_POINTS);
    let angular = angular_distribution(&state, &u, &params, &thetas)?;
    println!("angular integral {:.6}, peak at theta {:+.3}", angular.integral(), angular.peak_theta());
    Ok(())
}
