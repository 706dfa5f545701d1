//! Scheme A: the characteristic function `G(λ)` read out as a detector phase,
//! the work quasiprobability it encodes, its moments, and an FFT
//! reconstruction used as an independent check.
//!
//! `G(λ)` is kept as an exact exponential sum
//!
//! ```text
//! G(λ) = Σ_{ikj} ρ_ik U_ji conj(U_jk) exp{iλ [ε_j^T - (ε_i^0 + ε_k^0)/2]}
//! ```
//!
//! so `P(W)` is a finite comb of signed atoms. Terms with `i = k` are the
//! classical part; terms with `i ≠ k` form the interference part, which sums
//! to zero because `Σ_j U_ji conj(U_jk) = δ_ik`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{fft_radix2_in_place, FftDirection};
use crate::system::{InitialState, TransitionTable};

/// Relative tolerance for merging coincident energies.
pub const FREQUENCY_MERGE_TOL: f64 = 1e-9;
/// Aggregated amplitudes at or below this magnitude are dropped.
pub const NEGLIGIBLE_AMPLITUDE: f64 = 1e-15;
/// Imaginary parts at or below this are discarded silently.
pub const IMAG_DISCARD_TOL: f64 = 1e-12;
/// Imaginary parts above this mean the input was not conjugate-closed.
pub const IMAG_ERROR_TOL: f64 = 1e-9;
pub const MAX_MOMENT_ORDER: usize = 6;

pub(crate) fn same_frequency(a: f64, b: f64) -> bool {
    (a - b).abs() <= FREQUENCY_MERGE_TOL * a.abs().max(1.0)
}

/// Groups indices of `freqs` into clusters of coincident values, ordered by
/// ascending frequency. Ties keep input order, so results are deterministic.
pub(crate) fn clusters(freqs: &[f64]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..freqs.len()).collect();
    order.sort_by(|&a, &b| freqs[a].total_cmp(&freqs[b]).then(a.cmp(&b)));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match out.last_mut() {
            Some(group) if same_frequency(freqs[group[0]], freqs[idx]) => group.push(idx),
            _ => out.push(vec![idx]),
        }
    }
    out
}

fn merged_frequency(freqs: &[f64], magnitudes: &[f64], group: &[usize]) -> f64 {
    let total: f64 = group.iter().map(|&i| magnitudes[i]).sum();
    if total > 0.0 {
        group.iter().map(|&i| freqs[i] * magnitudes[i]).sum::<f64>() / total
    } else {
        group.iter().map(|&i| freqs[i]).sum::<f64>() / group.len() as f64
    }
}

/// Merges `(W, weight)` pairs whose energies coincide: weights are summed and
/// `W` becomes the `|weight|`-weighted mean. Output is sorted by `W`.
pub fn aggregate(raw: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let freqs: Vec<f64> = raw.iter().map(|p| p.0).collect();
    let mags: Vec<f64> = raw.iter().map(|p| p.1.abs()).collect();
    clusters(&freqs)
        .into_iter()
        .map(|g| (merged_frequency(&freqs, &mags, &g), g.iter().map(|&i| raw[i].1).sum()))
        .collect()
}

/// Provenance of a term: `i = k` (classical) or `i ≠ k` (interference).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Classical,
    Interference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub amplitude: C64,
    pub frequency: f64,
    pub kind: AtomKind,
}

/// `Σ_m c_m exp(i x w_m)` in the sum's native variable `x`.
///
/// `variable_scale` relates `x` to the experimental control parameter:
/// `x = variable_scale * control`. It is 1 for the free-particle detector and
/// 2 for the cavity phase readout, where the recorded phase is twice the work.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    terms: Vec<ExpTerm>,
    variable_scale: f64,
}

impl ExponentialSum {
    /// Aggregates terms per `(kind, frequency)` and drops negligible ones.
    pub fn from_terms(raw: Vec<ExpTerm>, variable_scale: f64) -> Self {
        let mut terms = Vec::new();
        for kind in [AtomKind::Classical, AtomKind::Interference] {
            let subset: Vec<&ExpTerm> = raw.iter().filter(|t| t.kind == kind).collect();
            let freqs: Vec<f64> = subset.iter().map(|t| t.frequency).collect();
            let mags: Vec<f64> = subset.iter().map(|t| t.amplitude.norm()).collect();
            for group in clusters(&freqs) {
                let amplitude: C64 = group.iter().map(|&i| subset[i].amplitude).sum();
                if amplitude.norm() <= NEGLIGIBLE_AMPLITUDE {
                    continue;
                }
                let frequency = merged_frequency(&freqs, &mags, &group);
                terms.push(ExpTerm { amplitude, frequency, kind });
            }
        }
        terms.sort_by(|a, b| a.frequency.total_cmp(&b.frequency).then((a.kind as u8).cmp(&(b.kind as u8))));
        Self { terms, variable_scale }
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn variable_scale(&self) -> f64 {
        self.variable_scale
    }

    /// `Σ c_m e^{i x w_m}`, summed in stored order.
    pub fn evaluate(&self, x: f64) -> C64 {
        self.terms.iter().map(|t| t.amplitude * C64::from_polar(1.0, x * t.frequency)).sum()
    }

    /// Evaluates at `x = variable_scale * control`.
    pub fn evaluate_control(&self, control: f64) -> C64 {
        self.evaluate(self.variable_scale * control)
    }

    /// `Σ |c_m|`, an upper bound on `|G|`.
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.amplitude.norm()).sum()
    }

    pub fn max_abs_frequency(&self) -> f64 {
        self.terms.iter().map(|t| t.frequency.abs()).fold(0.0, f64::max)
    }
}

/// Builds `G(λ)` for a state and a drive.
pub fn characteristic_function(state: &InitialState, table: &TransitionTable) -> Result<ExponentialSum> {
    let rho = table.initial_elements(state)?;
    let u = &table.amplitudes;
    let (eps0, eps_t) = (table.eps0(), table.eps_t());
    let d = table.dim();
    let mut raw = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for k in 0..d {
            let rho_ik = rho[(i, k)];
            let kind = if i == k { AtomKind::Classical } else { AtomKind::Interference };
            for j in 0..d {
                raw.push(ExpTerm {
                    amplitude: rho_ik * u[(j, i)] * u[(j, k)].conj(),
                    frequency: eps_t[j] - 0.5 * (eps0[i] + eps0[k]),
                    kind,
                });
            }
        }
    }
    Ok(ExponentialSum::from_terms(raw, 1.0))
}

pub fn evaluate(sum: &ExponentialSum, lambda: f64) -> C64 {
    sum.evaluate(lambda)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkAtom {
    pub work: f64,
    pub weight: f64,
}

/// Signed work atoms with their classical / interference decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkQuasiDistribution {
    atoms: Vec<WorkAtom>,
    classical: Vec<WorkAtom>,
    interference: Vec<WorkAtom>,
}

impl WorkQuasiDistribution {
    pub fn from_parts(atoms: Vec<WorkAtom>, classical: Vec<WorkAtom>, interference: Vec<WorkAtom>) -> Self {
        Self { atoms, classical, interference }
    }

    /// All atoms, ascending in `W`, both parts merged.
    pub fn atoms(&self) -> &[WorkAtom] {
        &self.atoms
    }

    pub fn classical_part(&self) -> &[WorkAtom] {
        &self.classical
    }

    pub fn interference_part(&self) -> &[WorkAtom] {
        &self.interference
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// `Σ W^n weight`.
    pub fn moment(&self, n: u32) -> f64 {
        self.atoms.iter().map(|a| a.work.powi(n as i32) * a.weight).sum()
    }

    pub fn negativity(&self) -> f64 {
        negativity(self)
    }

    /// Multiplies every `W` by `s`, keeping atoms sorted.
    pub fn rescaled(&self, s: f64) -> Self {
        let scale = |v: &[WorkAtom]| {
            let mut out: Vec<WorkAtom> = v.iter().map(|a| WorkAtom { work: a.work * s, weight: a.weight }).collect();
            out.sort_by(|a, b| a.work.total_cmp(&b.work));
            out
        };
        Self { atoms: scale(&self.atoms), classical: scale(&self.classical), interference: scale(&self.interference) }
    }

    /// Weight of the atom at `w`, zero if absent.
    pub fn weight_at(&self, w: f64) -> f64 {
        self.atoms.iter().filter(|a| same_frequency(a.work, w)).map(|a| a.weight).sum()
    }
}

fn real_atoms(terms: &[&ExpTerm]) -> Result<Vec<WorkAtom>> {
    let freqs: Vec<f64> = terms.iter().map(|t| t.frequency).collect();
    let mags: Vec<f64> = terms.iter().map(|t| t.amplitude.norm()).collect();
    let mut atoms = Vec::new();
    for group in clusters(&freqs) {
        let weight: C64 = group.iter().map(|&i| terms[i].amplitude).sum();
        let work = merged_frequency(&freqs, &mags, &group);
        if weight.im.abs() > IMAG_ERROR_TOL {
            return Err(Error::NonRealAggregate { work, imag: weight.im });
        }
        if weight.norm() <= NEGLIGIBLE_AMPLITUDE {
            continue;
        }
        atoms.push(WorkAtom { work, weight: weight.re });
    }
    Ok(atoms)
}

/// The quasiprobability `P(W)` encoded by an exponential sum.
pub fn quasiprobability(sum: &ExponentialSum) -> Result<WorkQuasiDistribution> {
    let all: Vec<&ExpTerm> = sum.terms.iter().collect();
    let of_kind = |k: AtomKind| -> Vec<&ExpTerm> { sum.terms.iter().filter(|t| t.kind == k).collect() };
    Ok(WorkQuasiDistribution {
        atoms: real_atoms(&all)?,
        classical: real_atoms(&of_kind(AtomKind::Classical))?,
        interference: real_atoms(&of_kind(AtomKind::Interference))?,
    })
}

/// `Σ max(0, -weight)`.
pub fn negativity(dist: &WorkQuasiDistribution) -> f64 {
    dist.atoms.iter().map(|a| (-a.weight).max(0.0)).sum()
}

/// `<W^n> = Σ_m c_m w_m^n` for `1 <= n <= 6`.
pub fn moments_analytic(sum: &ExponentialSum, order: usize) -> Result<f64> {
    if order == 0 || order > MAX_MOMENT_ORDER {
        return Err(Error::InvalidMomentOrder(order));
    }
    let value: C64 = sum.terms.iter().map(|t| t.amplitude * t.frequency.powi(order as i32)).sum();
    if value.im.abs() > IMAG_ERROR_TOL {
        return Err(Error::NonRealMoment { order, imag: value.im });
    }
    Ok(value.re)
}

/// Finite-difference weights for the `m`-th derivative at 0 on the nodes
/// `xs` (Fornberg's recursion).
pub fn finite_difference_weights(m: usize, xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0];
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i];
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// `<W^n> = (-i)^n d^n G/dλ^n |_0` by a central stencil of half-width
/// `ceil(n/2) + 2` and spacing `step`, using only evaluations of `G`.
pub fn moments_finite_difference(sum: &ExponentialSum, order: usize, step: f64) -> Result<f64> {
    if order == 0 || order > MAX_MOMENT_ORDER {
        return Err(Error::InvalidMomentOrder(order));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!("finite-difference step must be positive, got {step}")));
    }
    let half = order.div_ceil(2) as i64 + 2;
    let nodes: Vec<f64> = (-half..=half).map(|k| k as f64 * step).collect();
    let unit: Vec<f64> = (-half..=half).map(|k| k as f64).collect();
    let weights = finite_difference_weights(order, &unit);
    let derivative: C64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| sum.evaluate(x) * w)
        .sum::<C64>()
        / step.powi(order as i32);
    let value = C64::new(0.0, -1.0).powu(order as u32) * derivative;
    Ok(value.re)
}

/// Default step for [`moments_finite_difference`]: a small fraction of the
/// shortest period in the sum.
pub fn default_fd_step(sum: &ExponentialSum) -> f64 {
    0.1 / sum.max_abs_frequency().max(1.0)
}

/// Parameters of the windowed FFT reconstruction of `P(W)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FftReconstruction {
    /// Half-width of the sampled λ interval.
    pub lambda_max: f64,
    /// Number of λ samples; a power of two.
    pub samples: usize,
    /// Standard deviation, in work units, of the Gaussian each atom becomes.
    pub window_sigma: f64,
}

/// `P(W)` convolved with a unit-area Gaussian, on a uniform `W` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BroadenedDensity {
    pub work: Vec<f64>,
    pub density: Vec<f64>,
    /// Largest `|Im|` of the transform before it was discarded.
    pub imag_residue: f64,
}

impl BroadenedDensity {
    pub fn bin_width(&self) -> f64 {
        self.work[1] - self.work[0]
    }

    /// `Σ density ΔW` over grid points in `[lo, hi)`.
    pub fn area_between(&self, lo: f64, hi: f64) -> f64 {
        let dw = self.bin_width();
        self.work
            .iter()
            .zip(&self.density)
            .filter(|(w, _)| **w >= lo && **w < hi)
            .map(|(_, p)| p * dw)
            .sum()
    }

    /// Density-weighted mean of `W` over `[lo, hi)`.
    pub fn centroid_between(&self, lo: f64, hi: f64) -> f64 {
        let (num, den) = self
            .work
            .iter()
            .zip(&self.density)
            .filter(|(w, _)| **w >= lo && **w < hi)
            .fold((0.0, 0.0), |(n, d), (w, p)| (n + w * p, d + p));
        num / den
    }

    /// For each atom, `(area, centroid)` over the cell bounded by midpoints to
    /// its neighbours (or `±8σ` at the ends).
    pub fn atom_cells(&self, dist: &WorkQuasiDistribution, sigma: f64) -> Vec<(f64, f64)> {
        let atoms = dist.atoms();
        (0..atoms.len())
            .map(|m| {
                let w = atoms[m].work;
                let lo = if m == 0 { w - 8.0 * sigma } else { 0.5 * (atoms[m - 1].work + w) };
                let hi = if m + 1 == atoms.len() { w + 8.0 * sigma } else { 0.5 * (atoms[m + 1].work + w) };
                (self.area_between(lo, hi), self.centroid_between(lo, hi))
            })
            .collect()
    }
}

/// Samples `G(λ) exp(-λ²σ²/2)` on `[-λ_max, λ_max)` and Fourier transforms it
/// to `W`, so that every atom becomes a Gaussian of width `σ`.
///
/// The grid must (a) reach far enough in λ for the window to decay and to give
/// a `W` spacing of at most `σ/2` (`λ_max σ >= 2π`), (b) span all frequencies
/// plus `8σ` in `W` without aliasing, and (c) separate the closest pair of
/// atoms by at least `6σ`.
pub fn reconstruct_fft(sum: &ExponentialSum, params: &FftReconstruction) -> Result<BroadenedDensity> {
    let FftReconstruction { lambda_max, samples, window_sigma } = *params;
    if !(lambda_max > 0.0) || !(window_sigma > 0.0) {
        return Err(Error::InvalidParameter("lambda_max and window_sigma must be positive".into()));
    }
    if !samples.is_power_of_two() || samples < 2 {
        return Err(Error::LengthNotPowerOfTwo(samples));
    }
    if lambda_max * window_sigma < 2.0 * PI {
        return Err(Error::InsufficientResolution(format!(
            "lambda_max * window_sigma = {:.3e} < 2π: window truncated and W grid too coarse",
            lambda_max * window_sigma
        )));
    }
    let n = samples;
    let d_lambda = 2.0 * lambda_max / n as f64;
    let d_work = PI / lambda_max;
    let half_range = n as f64 * d_work / 2.0;
    let reach = sum.max_abs_frequency() + 8.0 * window_sigma;
    if reach > half_range {
        return Err(Error::InsufficientResolution(format!(
            "W grid spans ±{half_range:.3e} but atoms reach {reach:.3e}; increase samples"
        )));
    }
    let freqs: Vec<f64> = sum.terms.iter().map(|t| t.frequency).collect();
    let centres: Vec<f64> = clusters(&freqs).iter().map(|g| freqs[g[0]]).collect();
    if let Some(gap) = centres.windows(2).map(|w| w[1] - w[0]).reduce(f64::min) {
        if gap < 6.0 * window_sigma {
            return Err(Error::InsufficientResolution(format!(
                "minimal frequency gap {gap:.3e} below 6σ = {:.3e}",
                6.0 * window_sigma
            )));
        }
    }

    let mut buf: Vec<C64> = (0..n)
        .map(|k| {
            let lambda = -lambda_max + k as f64 * d_lambda;
            let window = (-0.5 * (lambda * window_sigma).powi(2)).exp();
            sum.evaluate(lambda) * window
        })
        .collect();
    fft_radix2_in_place(&mut buf, FftDirection::Forward)?;

    let half = (n / 2) as i64;
    let mut work = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    let mut imag_residue = 0.0_f64;
    for m in -half..half {
        let idx = m.rem_euclid(n as i64) as usize;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let value = buf[idx] * (sign * d_lambda / (2.0 * PI));
        imag_residue = imag_residue.max(value.im.abs());
        work.push(m as f64 * d_work);
        density.push(value.re);
    }
    Ok(BroadenedDensity { work, density, imag_residue })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(re: f64, im: f64, w: f64, kind: AtomKind) -> ExpTerm {
        ExpTerm { amplitude: C64::new(re, im), frequency: w, kind }
    }

    #[test]
    fn aggregation_merges_near_coincident_energies() {
        let out = aggregate(vec![(1.0, 0.25), (1.0 + 1e-12, 0.25), (0.0, 0.5), (2.0, 0.0)]);
        assert_eq!(out.len(), 3);
        assert!((out[1].0 - 1.0).abs() < 1e-12);
        assert_eq!(out[1].1, 0.5);
    }

    #[test]
    fn aggregation_keeps_distinct_energies() {
        let out = aggregate(vec![(1.0, 0.5), (1.0 + 1e-6, 0.5)]);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn negligible_terms_vanish() {
        let s = ExponentialSum::from_terms(
            vec![term(1.0, 0.0, 0.0, AtomKind::Classical), term(1e-17, 0.0, 1.0, AtomKind::Classical)],
            1.0,
        );
        assert_eq!(s.terms().len(), 1);
    }

    #[test]
    fn phase_evaluation() {
        let s = ExponentialSum::from_terms(vec![term(1.0, 0.0, 1.0, AtomKind::Classical)], 1.0);
        assert!((s.evaluate(PI) + C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((s.evaluate(0.0) - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn control_variable_scaling() {
        let s = ExponentialSum::from_terms(vec![term(1.0, 0.0, 1.0, AtomKind::Classical)], 2.0);
        assert_eq!(s.evaluate_control(0.3), s.evaluate(0.6));
    }

    #[test]
    fn non_conjugate_closed_sum_is_rejected() {
        let s = ExponentialSum::from_terms(vec![term(0.5, 0.5, 1.0, AtomKind::Interference)], 1.0);
        assert!(matches!(quasiprobability(&s), Err(Error::NonRealAggregate { .. })));
    }

    #[test]
    fn moment_orders_are_bounded() {
        let s = ExponentialSum::from_terms(vec![term(1.0, 0.0, 0.0, AtomKind::Classical)], 1.0);
        assert_eq!(moments_analytic(&s, 0), Err(Error::InvalidMomentOrder(0)));
        assert_eq!(moments_analytic(&s, 7), Err(Error::InvalidMomentOrder(7)));
        for n in 1..=6 {
            assert_eq!(moments_analytic(&s, n), Ok(0.0));
        }
    }

    #[test]
    fn complex_moment_is_rejected() {
        let s = ExponentialSum::from_terms(vec![term(0.0, 1.0, 1.0, AtomKind::Interference)], 1.0);
        assert!(matches!(moments_analytic(&s, 1), Err(Error::NonRealMoment { .. })));
    }

    #[test]
    fn fornberg_second_derivative_five_point() {
        let w = finite_difference_weights(2, &[-2.0, -1.0, 0.0, 1.0, 2.0]);
        let expected = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn single_atom_fft() {
        let s = ExponentialSum::from_terms(vec![term(1.0, 0.0, 1.0, AtomKind::Classical)], 1.0);
        let params = FftReconstruction { lambda_max: 40.0 * PI, samples: 256, window_sigma: 0.05 };
        let out = reconstruct_fft(&s, &params).unwrap();
        assert!(out.work[0] <= -2.0 && *out.work.last().unwrap() >= 2.0 - out.bin_width());
        let area = out.area_between(0.5, 1.5);
        let centre = out.centroid_between(0.5, 1.5);
        assert!((area - 1.0).abs() < 0.02);
        assert!((centre - 1.0).abs() < out.bin_width());
    }

    #[test]
    fn vanishing_window_is_unresolved() {
        let s = ExponentialSum::from_terms(vec![term(1.0, 0.0, 1.0, AtomKind::Classical)], 1.0);
        let params = FftReconstruction { lambda_max: 40.0 * PI, samples: 256, window_sigma: 1e-6 };
        assert!(matches!(reconstruct_fft(&s, &params), Err(Error::InsufficientResolution(_))));
    }

    #[test]
    fn aliasing_is_detected() {
        let s = ExponentialSum::from_terms(vec![term(1.0, 0.0, 10.0, AtomKind::Classical)], 1.0);
        let params = FftReconstruction { lambda_max: 40.0 * PI, samples: 64, window_sigma: 0.05 };
        assert!(matches!(reconstruct_fft(&s, &params), Err(Error::InsufficientResolution(_))));
    }
}
