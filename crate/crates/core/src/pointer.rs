//! Scheme B with a free-particle pointer prepared in a Gaussian wave packet.
//!
//! The drive shifts the pointer by `s·ε` for every energy `ε` it exchanges,
//! with `s` the composite coupling. For a pointer narrower than the level
//! spacing the position histogram is the two-measurement distribution; for a
//! wide pointer the off-diagonal terms of `ρ` reappear in it.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scheme_a::{clusters, same_frequency, WorkQuasiDistribution};
use crate::system::{classical_tmp_distribution, InitialState, TransitionTable};

pub const DEFAULT_GRID_POINTS: usize = 2048;
/// Half-width, in units of σ, added around the extreme centres.
pub const GRID_MARGIN_SIGMAS: f64 = 8.0;
/// Imaginary residues above this indicate an inconsistent input.
pub const IMAG_ERROR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPointer {
    /// Initial pointer centre.
    pub x0: f64,
    /// Standard deviation of the initial position wave packet.
    pub sigma: f64,
    /// Position shift per unit of energy exchanged.
    pub shift_per_energy: f64,
}

impl GaussianPointer {
    pub fn new(x0: f64, sigma: f64, shift_per_energy: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("pointer sigma must be positive, got {sigma}")));
        }
        if !shift_per_energy.is_finite() || shift_per_energy == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "shift_per_energy must be finite and nonzero, got {shift_per_energy}"
            )));
        }
        if !x0.is_finite() {
            return Err(Error::InvalidParameter("pointer x0 must be finite".into()));
        }
        Ok(Self { x0, sigma, shift_per_energy })
    }
}

/// `P(Δx)` sampled on an ascending grid of displacements `Δx = x - x0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointerDistribution {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    /// Largest pointwise `|Im|` dropped from the density.
    pub imag_residue: f64,
}

impl PointerDistribution {
    /// Trapezoidal integral over the whole grid.
    pub fn integral(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, p)| 0.5 * (x[1] - x[0]) * (p[0] + p[1]))
            .sum()
    }

    /// Integral of the piecewise-linear interpolant over `[lo, hi]`.
    pub fn area_between(&self, lo: f64, hi: f64) -> f64 {
        let mut area = 0.0;
        for (x, p) in self.grid.windows(2).zip(self.density.windows(2)) {
            let a = x[0].max(lo);
            let b = x[1].min(hi);
            if b <= a {
                continue;
            }
            let slope = (p[1] - p[0]) / (x[1] - x[0]);
            let pa = p[0] + slope * (a - x[0]);
            let pb = p[0] + slope * (b - x[0]);
            area += 0.5 * (b - a) * (pa + pb);
        }
        area
    }

    /// Absolute detector positions `x0 + Δx`.
    pub fn positions(&self, pointer: &GaussianPointer) -> Vec<f64> {
        self.grid.iter().map(|dx| pointer.x0 + dx).collect()
    }

    pub fn min_density(&self) -> f64 {
        self.density.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `[min centre - 8σ, max centre + 8σ]` with `points` samples, where the
/// centres are all `s·(ε_j^T - ε_i^0)`.
pub fn default_grid(table: &TransitionTable, pointer: &GaussianPointer, points: usize) -> Vec<f64> {
    let s = pointer.shift_per_energy;
    let centres = table.eps_t().iter().flat_map(|et| table.eps0().iter().map(move |e0| s * (et - e0)));
    let (lo, hi) = centres.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(c), hi.max(c)));
    let margin = GRID_MARGIN_SIGMAS * pointer.sigma;
    let (lo, hi) = (lo - margin, hi + margin);
    if points < 2 {
        return vec![0.5 * (lo + hi); points];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|k| lo + k as f64 * step).collect()
}

/// Position distribution of the pointer after the protocol.
pub fn pointer_distribution(
    state: &InitialState,
    table: &TransitionTable,
    pointer: &GaussianPointer,
    grid: &[f64],
) -> Result<PointerDistribution> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("pointer grid must be strictly ascending".into()));
    }
    let rho = table.initial_elements(state)?;
    let d = table.dim();
    let s = pointer.shift_per_energy;
    let sigma = pointer.sigma;
    let (eps0, eps_t) = (table.eps0(), table.eps_t());
    let u = &table.amplitudes;

    // (coefficient, centre_i, centre_k) for every (i, k, j).
    let mut terms = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for k in 0..d {
            if rho[(i, k)].norm() == 0.0 {
                continue;
            }
            for j in 0..d {
                let coeff = rho[(i, k)] * u[(j, i)] * u[(j, k)].conj();
                terms.push((coeff, s * (eps_t[j] - eps0[i]), s * (eps_t[j] - eps0[k])));
            }
        }
    }
    let norm = 1.0 / ((2.0 * PI).sqrt() * sigma);
    let inv = 1.0 / (4.0 * sigma * sigma);
    let values: Vec<C64> = grid
        .par_iter()
        .map(|&dx| {
            terms
                .iter()
                .map(|&(c, a, b)| c * ((-((dx - a).powi(2) + (dx - b).powi(2)) * inv).exp() * norm))
                .sum()
        })
        .collect();
    let imag_residue = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag_residue > IMAG_ERROR_TOL {
        return Err(Error::NonRealResidue(imag_residue));
    }
    Ok(PointerDistribution { grid: grid.to_vec(), density: values.iter().map(|v| v.re).collect(), imag_residue })
}

/// The `σ → 0` limit: atoms at `s·(ε_j^T - ε_i^0)` with two-measurement weights.
pub fn delta_pointer_limit(
    state: &InitialState,
    table: &TransitionTable,
    pointer: &GaussianPointer,
) -> Result<WorkQuasiDistribution> {
    let eps0 = table.eps0();
    for i in 0..eps0.len() {
        for k in i + 1..eps0.len() {
            if same_frequency(eps0[i], eps0[k]) {
                return Err(Error::DegenerateInitialSpectrum(i, k));
            }
        }
    }
    Ok(classical_tmp_distribution(state, table)?.rescaled(pointer.shift_per_energy))
}

/// `min |s·(ε_k^0 - ε_i^0)| / σ` over distinct initial levels. Large values
/// mean the pointer resolves every gap and interference is suppressed.
pub fn interference_overlap_scale(table: &TransitionTable, pointer: &GaussianPointer) -> Result<f64> {
    let eps0 = table.eps0();
    let levels: Vec<f64> = clusters(eps0).iter().map(|g| eps0[g[0]]).collect();
    let gap = levels.windows(2).map(|w| w[1] - w[0]).reduce(f64::min).ok_or(Error::SingleLevel)?;
    Ok((pointer.shift_per_energy * gap).abs() / pointer.sigma)
}
