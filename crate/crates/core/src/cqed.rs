//! Circuit-QED realisation: a qubit dispersively coupled to a cavity mode.
//!
//! The protocol records the qubit energy as a cavity phase, drives the qubit
//! with `U`, and records again with the opposite sign. Net effect on the
//! joint state, for qubit levels `i → j` and photon number `n`:
//!
//! ```text
//! |i>|n>  ↦  Σ_j U_ji e^{-iφ(η_j - η_i) n} |j>|n>
//! ```
//!
//! with `η = ±1` the `σ_z` eigenvalues. Tracing out the qubit leaves a cavity
//! state whose Fock coherences carry the characteristic function (scheme A)
//! and whose coherent-state angle carries the work (scheme B).
//!
//! Qubit operators here are in the computational basis: index 0 is the
//! excited state (`η = +1`), index 1 the ground state (`η = -1`).

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{erfc_complex, ComplexMatrix, GaussLegendre, UNITARY_TOL};
use crate::scheme_a::{AtomKind, ExpTerm, ExponentialSum};
use crate::system::InitialState;

/// `σ_z` eigenvalues in computational-basis order.
pub const ETA: [f64; 2] = [1.0, -1.0];
pub const FOCK_NORM_TOL: f64 = 1e-10;
pub const FOCK_TAIL_TOL: f64 = 1e-8;
/// Imaginary residue tolerated in the Husimi closed form before it is an error.
pub const HUSIMI_IMAG_TOL: f64 = 1e-8;
/// Imaginary residue tolerated in the angular closed form.
pub const ANGULAR_IMAG_TOL: f64 = 1e-9;
pub const MIN_RADIAL_POINTS: usize = 256;
/// Radial extent beyond `α` used by the numeric angular route.
pub const RADIAL_MARGIN: f64 = 8.0;
pub const QUADRATURE_TOL: f64 = 1e-7;
pub const DEFAULT_THETA_POINTS: usize = 720;

/// `ceil(α² + 6α + 10)`: coherent-state mass above this is below `1e-8`.
pub fn required_cutoff(alpha: f64) -> usize {
    (alpha * alpha + 6.0 * alpha + 10.0).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersiveParams {
    phi: f64,
    alpha: f64,
    fock_cutoff: usize,
}

impl DispersiveParams {
    /// `fock_cutoff = None` applies [`required_cutoff`].
    pub fn new(phi: f64, alpha: f64, fock_cutoff: Option<usize>) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidParameter(format!("phi must be finite, got {phi}")));
        }
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha must be finite and >= 0, got {alpha}")));
        }
        let required = required_cutoff(alpha);
        let fock_cutoff = fock_cutoff.unwrap_or(required);
        if fock_cutoff < required {
            return Err(Error::CutoffTooSmall { cutoff: fock_cutoff, alpha, required });
        }
        Ok(Self { phi, alpha, fock_cutoff })
    }

    /// Conditional phase per photon.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Real coherent amplitude of the cavity probe.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }
}

/// `G_n = e^{-α²/2} α^n / √n!` for `n = 0..=cutoff`.
pub fn coherent_amplitudes(alpha: f64, cutoff: usize) -> Result<Vec<C64>> {
    let params = DispersiveParams::new(0.0, alpha, Some(cutoff))?;
    let mut out = Vec::with_capacity(params.fock_cutoff + 1);
    let mut g = (-0.5 * alpha * alpha).exp();
    out.push(C64::new(g, 0.0));
    for n in 1..=cutoff {
        g *= alpha / (n as f64).sqrt();
        out.push(C64::new(g, 0.0));
    }
    Ok(out)
}

fn check_qubit(state: &InitialState, u: &ComplexMatrix) -> Result<()> {
    if state.dim() != 2 {
        return Err(Error::NotAQubit(state.dim()));
    }
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::NotAQubit(u.rows()));
    }
    let dev = u.unitary_deviation();
    if dev > UNITARY_TOL {
        return Err(Error::NonUnitary { deviation: dev });
    }
    Ok(())
}

/// Branch `(i, k, j)` of the protocol: coefficient `ρ_ik U_ji conj(U_jk)`.
#[derive(Debug, Clone, Copy)]
struct Branch {
    i: usize,
    k: usize,
    j: usize,
    coeff: C64,
}

fn branches(state: &InitialState, u: &ComplexMatrix) -> Vec<Branch> {
    let rho = state.matrix();
    let mut out = Vec::with_capacity(8);
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                let coeff = rho[(i, k)] * u[(j, i)] * u[(j, k)].conj();
                if coeff.norm() > 0.0 {
                    out.push(Branch { i, k, j, coeff });
                }
            }
        }
    }
    out
}

/// `Λ_ji = φ (η_j - η_i)`.
fn lambda(phi: f64, j: usize, i: usize) -> f64 {
    phi * (ETA[j] - ETA[i])
}

/// Reduced cavity state in the Fock basis `|0>, …, |N>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityDensityMatrix {
    pub entries: ComplexMatrix,
}

impl CavityDensityMatrix {
    pub fn cutoff(&self) -> usize {
        self.entries.rows() - 1
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.entries.rows()).map(|n| self.entries[(n, n)].re).collect()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.populations().iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }
}

/// Cavity state after the record–drive–record protocol, starting from the
/// product of the qubit state and the pure cavity state `Σ G_n |n>`.
///
/// The vector's last entry must carry less than `1e-8` probability, so that
/// truncation does not bite.
pub fn cavity_state_after_protocol(
    state: &InitialState,
    u: &ComplexMatrix,
    fock_amplitudes: &[C64],
    params: &DispersiveParams,
) -> Result<CavityDensityMatrix> {
    check_qubit(state, u)?;
    let norm: f64 = fock_amplitudes.iter().map(|g| g.norm_sqr()).sum();
    if (norm - 1.0).abs() > FOCK_NORM_TOL {
        return Err(Error::UnnormalizedFockVector(norm));
    }
    let dim = fock_amplitudes.len();
    let tail = fock_amplitudes[dim - 1].norm_sqr();
    if tail > FOCK_TAIL_TOL {
        return Err(Error::CutoffTooSmall { cutoff: dim - 1, alpha: params.alpha, required: dim });
    }
    let phi = params.phi;
    let mut rho = ComplexMatrix::zeros(dim, dim);
    for b in branches(state, u) {
        let left: Vec<C64> = (0..dim)
            .map(|n| fock_amplitudes[n] * C64::from_polar(1.0, -lambda(phi, b.j, b.i) * n as f64))
            .collect();
        let right: Vec<C64> = (0..dim)
            .map(|m| fock_amplitudes[m] * C64::from_polar(1.0, -lambda(phi, b.j, b.k) * m as f64))
            .collect();
        for n in 0..dim {
            let ln = b.coeff * left[n];
            for m in 0..dim {
                rho[(n, m)] += ln * right[m].conj();
            }
        }
    }
    Ok(CavityDensityMatrix { entries: rho })
}

/// `<n|ρ_D|m> / (G_n conj(G_m))`: the phase record carried by one Fock
/// coherence, including the photon-number dependent part that
/// [`cqed_characteristic_function`] drops.
pub fn raw_fock_coherence(state: &InitialState, u: &ComplexMatrix, phi: f64, n: usize, m: usize) -> Result<C64> {
    check_qubit(state, u)?;
    Ok(branches(state, u)
        .iter()
        .map(|b| {
            let phase = -lambda(phi, b.j, b.i) * n as f64 + lambda(phi, b.j, b.k) * m as f64;
            b.coeff * C64::from_polar(1.0, phase)
        })
        .sum())
}

/// Scheme A in the cavity: the coherence between `|n̄-1>` and `|n̄+1>` is
/// `Σ ρ_ik U_ji conj(U_jk) exp{2iφ[η_j - (η_i + η_k)/2]}` once the
/// `n̄ φ (η_i - η_k)` phase is dropped.
///
/// The result is an exponential sum in `2φ` (variable scale 2) with atoms at
/// `η_j - (η_i + η_k)/2`, i.e. the work in units where the qubit splitting is 2.
pub fn cqed_characteristic_function(state: &InitialState, u: &ComplexMatrix) -> Result<ExponentialSum> {
    check_qubit(state, u)?;
    let terms = branches(state, u)
        .into_iter()
        .map(|b| ExpTerm {
            amplitude: b.coeff,
            frequency: ETA[b.j] - 0.5 * (ETA[b.i] + ETA[b.k]),
            kind: if b.i == b.k { AtomKind::Classical } else { AtomKind::Interference },
        })
        .collect();
    Ok(ExponentialSum::from_terms(terms, 2.0))
}

/// Rectangular sampling window in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct HusimiGridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub re_points: usize,
    pub im_points: usize,
}

impl HusimiGridSpec {
    /// Square window `|Re ξ|, |Im ξ| <= half_width`.
    pub fn square(half_width: f64, points: usize) -> Self {
        Self { re_min: -half_width, re_max: half_width, im_min: -half_width, im_max: half_width, re_points: points, im_points: points }
    }

    fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![0.5 * (lo + hi)],
            _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
        }
    }

    pub fn re_axis(&self) -> Vec<f64> {
        Self::axis(self.re_min, self.re_max, self.re_points)
    }

    pub fn im_axis(&self) -> Vec<f64> {
        Self::axis(self.im_min, self.im_max, self.im_points)
    }

    /// Grid points, `Im` major, `Re` minor.
    pub fn points(&self) -> Vec<C64> {
        let re = self.re_axis();
        self.im_axis().into_iter().flat_map(|y| re.iter().map(move |&x| C64::new(x, y))).collect()
    }
}

/// `Q(ξ)` on a [`HusimiGridSpec`], `Im` major.
#[derive(Debug, Clone, PartialEq)]
pub struct HusimiGrid {
    pub spec: HusimiGridSpec,
    pub values: Vec<f64>,
}

impl HusimiGrid {
    pub fn value(&self, re_index: usize, im_index: usize) -> f64 {
        self.values[im_index * self.spec.re_points + re_index]
    }

    /// Riemann sum `Σ Q ΔRe ΔIm`.
    pub fn integral(&self) -> f64 {
        let s = &self.spec;
        let dx = (s.re_max - s.re_min) / (s.re_points.max(2) - 1) as f64;
        let dy = (s.im_max - s.im_min) / (s.im_points.max(2) - 1) as f64;
        self.values.iter().sum::<f64>() * dx * dy
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `⟨m|ξ⟩ = e^{-|ξ|²/2} ξ^m / √m!` for `m = 0..dim`.
fn coherent_overlaps(xi: C64, dim: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(dim);
    let mut v = C64::new((-0.5 * xi.norm_sqr()).exp(), 0.0);
    for m in 0..dim {
        if m > 0 {
            v = v * xi / (m as f64).sqrt();
        }
        out.push(v);
    }
    out
}

/// `Q(ξ) = <ξ|ρ|ξ>/π` for a Fock-basis cavity state.
pub fn husimi_at(rho: &CavityDensityMatrix, xi: C64) -> f64 {
    let v = coherent_overlaps(xi, rho.entries.rows());
    rho.entries.sandwich(&v, &v).re / PI
}

pub fn husimi_q(rho: &CavityDensityMatrix, grid: &HusimiGridSpec) -> HusimiGrid {
    let values = grid.points().par_iter().map(|&xi| husimi_at(rho, xi)).collect();
    HusimiGrid { spec: *grid, values }
}

/// Closed form of `Q(ξ)` for a coherent probe:
/// `(1/π) Σ ρ_ik U_ji conj(U_jk) exp(-δ² - α² + αδχ)` with `ξ = δe^{iθ}` and
/// `χ = e^{-i(Λ_ji + θ)} + e^{i(Λ_jk + θ)}`.
pub fn husimi_closed_form(state: &InitialState, u: &ComplexMatrix, params: &DispersiveParams, xi: C64) -> Result<f64> {
    check_qubit(state, u)?;
    let value = husimi_branches(&branches(state, u), params, xi.norm(), xi.arg());
    if value.im.abs() > HUSIMI_IMAG_TOL {
        return Err(Error::NonRealResidue(value.im));
    }
    Ok(value.re)
}

fn chi(b: &Branch, phi: f64, theta: f64) -> C64 {
    C64::from_polar(1.0, -(lambda(phi, b.j, b.i) + theta)) + C64::from_polar(1.0, lambda(phi, b.j, b.k) + theta)
}

fn husimi_branches(branches: &[Branch], params: &DispersiveParams, delta: f64, theta: f64) -> C64 {
    let a = params.alpha;
    branches
        .iter()
        .map(|b| b.coeff * (C64::new(-delta * delta - a * a, 0.0) + chi(b, params.phi, theta) * (a * delta)).exp())
        .sum::<C64>()
        / PI
}

/// `P(θ)` on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularDistribution {
    pub theta: Vec<f64>,
    pub density: Vec<f64>,
}

impl AngularDistribution {
    /// Periodic trapezoid rule over one turn.
    pub fn integral(&self) -> f64 {
        let n = self.theta.len();
        if n < 2 {
            return 0.0;
        }
        (0..n)
            .map(|k| {
                let next = if k + 1 == n { self.theta[0] + 2.0 * PI } else { self.theta[k + 1] };
                let prev = if k == 0 { self.theta[n - 1] - 2.0 * PI } else { self.theta[k - 1] };
                0.5 * (next - prev) * self.density[k]
            })
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.density.iter().zip(&other.density).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Grid angle of the largest density.
    pub fn peak_theta(&self) -> f64 {
        let (k, _) = self.density.iter().enumerate().fold((0, f64::MIN), |acc, (k, &p)| if p > acc.1 { (k, p) } else { acc });
        self.theta[k]
    }
}

/// `-π + 2πk/N`, `k = 0..N`.
pub fn uniform_theta_grid(points: usize) -> Vec<f64> {
    (0..points).map(|k| -PI + 2.0 * PI * k as f64 / points as f64).collect()
}

/// Closed-form angular marginal `∫ δ Q(δe^{iθ}) dδ`:
/// `Σ ρ_ik U_ji conj(U_jk) { e^{-α²}/2π + e^{-α²(1-χ²/4)} αχ erfc(-αχ/2) / 4√π }`.
pub fn angular_distribution(
    state: &InitialState,
    u: &ComplexMatrix,
    params: &DispersiveParams,
    thetas: &[f64],
) -> Result<AngularDistribution> {
    check_qubit(state, u)?;
    let bs = branches(state, u);
    let a = params.alpha;
    let vacuum = (-a * a).exp() / (2.0 * PI);
    let prefactor = 1.0 / (4.0 * PI.sqrt());
    let values: Vec<C64> = thetas
        .par_iter()
        .map(|&theta| {
            bs.iter()
                .map(|b| {
                    let x = chi(b, params.phi, theta);
                    let gauss = (-(a * a) * (C64::new(1.0, 0.0) - x * x / 4.0)).exp();
                    b.coeff * (vacuum + gauss * x * (a * prefactor) * erfc_complex(-x * (a / 2.0)))
                })
                .sum()
        })
        .collect();
    finish_angular(thetas, values)
}

fn finish_angular(thetas: &[f64], values: Vec<C64>) -> Result<AngularDistribution> {
    if let Some(bad) = values.iter().map(|v| v.im.abs()).find(|&r| r > ANGULAR_IMAG_TOL) {
        return Err(Error::NonRealResidue(bad));
    }
    Ok(AngularDistribution { theta: thetas.to_vec(), density: values.iter().map(|v| v.re).collect() })
}

/// Radial quadrature of the closed-form Husimi function over `[0, radial_max]`
/// (default `α + 8`), with `radial_points` and twice as many Gauss–Legendre
/// nodes. Fails if the two rules disagree or the integrand has not decayed at
/// the outer radius.
pub fn angular_distribution_numeric(
    state: &InitialState,
    u: &ComplexMatrix,
    params: &DispersiveParams,
    thetas: &[f64],
    radial_points: usize,
    radial_max: Option<f64>,
) -> Result<AngularDistribution> {
    check_qubit(state, u)?;
    if radial_points < MIN_RADIAL_POINTS {
        return Err(Error::InvalidParameter(format!(
            "radial_points must be >= {MIN_RADIAL_POINTS}, got {radial_points}"
        )));
    }
    let r_max = radial_max.unwrap_or(params.alpha + RADIAL_MARGIN);
    if !(r_max > 0.0) {
        return Err(Error::InvalidParameter(format!("radial range must be positive, got {r_max}")));
    }
    let bs = branches(state, u);
    let coarse = GaussLegendre::new(radial_points);
    let fine = GaussLegendre::new(2 * radial_points);
    let integrate = |rule: &GaussLegendre, theta: f64| -> C64 {
        rule.mapped(0.0, r_max).map(|(d, w)| husimi_branches(&bs, params, d, theta) * (w * d)).sum()
    };
    let results: Vec<(C64, f64, f64)> = thetas
        .par_iter()
        .map(|&theta| {
            let lo = integrate(&coarse, theta);
            let hi = integrate(&fine, theta);
            let edge = r_max * husimi_branches(&bs, params, r_max, theta).norm();
            (hi, (hi - lo).norm(), edge)
        })
        .collect();
    for (k, &(_, diff, edge)) in results.iter().enumerate() {
        if diff > QUADRATURE_TOL {
            return Err(Error::QuadratureNotConverged(format!(
                "theta = {:.6}: refinement changed the result by {diff:.3e}",
                thetas[k]
            )));
        }
        if edge > QUADRATURE_TOL {
            return Err(Error::QuadratureNotConverged(format!(
                "theta = {:.6}: integrand {edge:.3e} at outer radius {r_max}; range too short",
                thetas[k]
            )));
        }
    }
    finish_angular(thetas, results.into_iter().map(|r| r.0).collect())
}

/// True when the coherent probe cannot resolve an energy gap `eta_gap`:
/// `|φ · eta_gap| <= √2/α`.
pub fn interference_predicate(params: &DispersiveParams, eta_gap: f64) -> bool {
    params.alpha == 0.0 || (params.phi * eta_gap).abs() <= SQRT_2 / params.alpha
}
