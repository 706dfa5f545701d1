//! Scenario configuration: JSON in, validated structs with defaults out.

use serde::{Deserialize, Serialize};

use crate::cqed::{required_cutoff, DEFAULT_THETA_POINTS};
use crate::numerics::ComplexMatrix;
use crate::pointer::DEFAULT_GRID_POINTS;
use crate::C64;

/// Raised for malformed or inconsistent configuration; names the JSON path.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

/// A matrix entry: a real number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    pub fn value(self) -> C64 {
        match self {
            Entry::Real(x) => C64::new(x, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

pub type MatrixConfig = Vec<Vec<Entry>>;

pub fn matrix_from_config(m: &MatrixConfig, path: &str) -> Result<ComplexMatrix, ConfigError> {
    let rows: Vec<Vec<C64>> = m.iter().map(|r| r.iter().map(|e| e.value()).collect()).collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| ConfigError::new(path, e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub system: SystemConfig,
    pub drive: DriveConfig,
    #[serde(default)]
    pub scheme_a: SchemeAConfig,
    #[serde(default)]
    pub pointer: PointerConfig,
    #[serde(default)]
    pub cqed: CqedConfig,
    #[serde(default)]
    pub moments: MomentsConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    /// Qubit splitting; the Hamiltonian is `(omega_a/2) σ_z` unless `h0` is given.
    #[serde(default = "one")]
    pub omega_a: f64,
    pub initial_state: StateConfig,
    /// Remove initial coherences in the energy basis.
    #[serde(default)]
    pub dephase: bool,
    /// Explicit initial Hamiltonian (any dimension).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<MatrixConfig>,
    /// Explicit final Hamiltonian; defaults to `h0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ht: Option<MatrixConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<MatrixConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveConfig {
    /// `n` in `U = exp(-i n·σ)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary: Option<MatrixConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SchemeAConfig {
    pub lambda_max: f64,
    pub samples: usize,
    pub window_sigma: f64,
    /// Upper end of the `[0, λ]` range written to the characteristic table.
    pub characteristic_lambda_max: f64,
    pub characteristic_points: usize,
    /// Also write the FFT reconstruction.
    pub fft: bool,
}

impl Default for SchemeAConfig {
    fn default() -> Self {
        Self {
            lambda_max: 160.0,
            samples: 1024,
            window_sigma: 0.05,
            characteristic_lambda_max: 4.0 * std::f64::consts::PI,
            characteristic_points: 401,
            fft: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PointerConfig {
    pub sigma: f64,
    pub shift_per_energy: f64,
    pub x0: f64,
    pub grid_points: usize,
    /// Explicit `[min, max]` for `Δx`; omitted means centres ± 8σ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_range: Option<[f64; 2]>,
}

impl Default for PointerConfig {
    fn default() -> Self {
        Self { sigma: 0.25, shift_per_energy: 1.0, x0: 0.0, grid_points: DEFAULT_GRID_POINTS, grid_range: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CqedConfig {
    pub phi: f64,
    pub alpha: f64,
    /// Filled with `ceil(α² + 6α + 10)` when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fock_cutoff: Option<usize>,
    pub theta_points: usize,
    pub husimi: HusimiConfig,
    /// Central photon number of the `|n̄-1>, |n̄+1>` probe in `cqed-scheme-a`.
    pub nbar: usize,
    /// Upper end of the `[0, φ]` range written by `cqed-scheme-a`.
    pub phi_max: f64,
    pub phi_points: usize,
}

impl Default for CqedConfig {
    fn default() -> Self {
        Self {
            phi: 0.5,
            alpha: 5.0,
            fock_cutoff: None,
            theta_points: DEFAULT_THETA_POINTS,
            husimi: HusimiConfig::default(),
            nbar: 1,
            phi_max: std::f64::consts::PI,
            phi_points: 401,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HusimiConfig {
    /// Square window `|Re ξ|, |Im ξ| <= half_width`; defaults to `α + 6`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    pub points: usize,
}

impl Default for HusimiConfig {
    fn default() -> Self {
        Self { half_width: None, points: 121 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MomentsConfig {
    /// Finite-difference step in λ; omitted means a fraction of the shortest period.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
}

impl Default for MomentsConfig {
    fn default() -> Self {
        Self { fd_step: None }
    }
}

fn one() -> f64 {
    1.0
}

/// Parses, validates, and fills derived defaults.
pub fn parse_config(bytes: &[u8]) -> Result<ScenarioConfig, ConfigError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ConfigError::new("$", format!("not UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let mut config: ScenarioConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::new(if path == "." { "$".to_string() } else { path }, e.into_inner().to_string())
    })?;
    config.validate()?;
    config.apply_defaults();
    Ok(config)
}

fn finite(path: &str, x: f64) -> Result<(), ConfigError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::new(path, "must be finite"))
    }
}

fn positive(path: &str, x: f64) -> Result<(), ConfigError> {
    finite(path, x)?;
    if x > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::new(path, format!("must be positive, got {x}")))
    }
}

fn matrix_finite(path: &str, m: &MatrixConfig) -> Result<(), ConfigError> {
    for (r, row) in m.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            let v = e.value();
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(ConfigError::new(format!("{path}[{r}][{c}]"), "must be finite"));
            }
        }
    }
    Ok(())
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let s = &self.system;
        positive("system.omega_a", s.omega_a)?;
        match (&s.initial_state.bloch, &s.initial_state.rho) {
            (Some(_), Some(_)) => {
                return Err(ConfigError::new("system.initial_state", "give exactly one of \"bloch\" and \"rho\", not both"))
            }
            (None, None) => return Err(ConfigError::new("system.initial_state", "one of \"bloch\" or \"rho\" is required")),
            (Some(b), None) => {
                for (i, x) in b.iter().enumerate() {
                    finite(&format!("system.initial_state.bloch[{i}]"), *x)?;
                }
            }
            (None, Some(m)) => matrix_finite("system.initial_state.rho", m)?,
        }
        if let Some(m) = &s.h0 {
            matrix_finite("system.h0", m)?;
        }
        if let Some(m) = &s.ht {
            matrix_finite("system.ht", m)?;
        }
        match (&self.drive.rotation, &self.drive.unitary) {
            (Some(_), Some(_)) => {
                return Err(ConfigError::new("drive", "give exactly one of \"rotation\" and \"unitary\", not both"))
            }
            (None, None) => return Err(ConfigError::new("drive", "one of \"rotation\" or \"unitary\" is required")),
            (Some(n), None) => {
                for (i, x) in n.iter().enumerate() {
                    finite(&format!("drive.rotation[{i}]"), *x)?;
                }
            }
            (None, Some(m)) => matrix_finite("drive.unitary", m)?,
        }

        let a = &self.scheme_a;
        positive("scheme_a.lambda_max", a.lambda_max)?;
        positive("scheme_a.window_sigma", a.window_sigma)?;
        if !a.samples.is_power_of_two() || a.samples < 2 {
            return Err(ConfigError::new("scheme_a.samples", format!("must be a power of two >= 2, got {}", a.samples)));
        }
        positive("scheme_a.characteristic_lambda_max", a.characteristic_lambda_max)?;
        if a.characteristic_points < 2 {
            return Err(ConfigError::new("scheme_a.characteristic_points", "must be at least 2"));
        }

        let p = &self.pointer;
        positive("pointer.sigma", p.sigma)?;
        finite("pointer.shift_per_energy", p.shift_per_energy)?;
        if p.shift_per_energy == 0.0 {
            return Err(ConfigError::new("pointer.shift_per_energy", "must be nonzero"));
        }
        finite("pointer.x0", p.x0)?;
        if p.grid_points < 2 {
            return Err(ConfigError::new("pointer.grid_points", "must be at least 2"));
        }
        if let Some([lo, hi]) = p.grid_range {
            finite("pointer.grid_range[0]", lo)?;
            finite("pointer.grid_range[1]", hi)?;
            if !(hi > lo) {
                return Err(ConfigError::new("pointer.grid_range", "must be ascending"));
            }
        }

        let c = &self.cqed;
        finite("cqed.phi", c.phi)?;
        finite("cqed.alpha", c.alpha)?;
        if c.alpha < 0.0 {
            return Err(ConfigError::new("cqed.alpha", format!("must be >= 0, got {}", c.alpha)));
        }
        if c.theta_points < 2 {
            return Err(ConfigError::new("cqed.theta_points", "must be at least 2"));
        }
        if let Some(h) = c.husimi.half_width {
            positive("cqed.husimi.half_width", h)?;
        }
        if c.husimi.points < 2 {
            return Err(ConfigError::new("cqed.husimi.points", "must be at least 2"));
        }
        if c.nbar < 1 {
            return Err(ConfigError::new("cqed.nbar", "must be at least 1"));
        }
        positive("cqed.phi_max", c.phi_max)?;
        if c.phi_points < 2 {
            return Err(ConfigError::new("cqed.phi_points", "must be at least 2"));
        }
        if let Some(h) = self.moments.fd_step {
            positive("moments.fd_step", h)?;
        }
        Ok(())
    }

    fn apply_defaults(&mut self) {
        let c = &mut self.cqed;
        c.fock_cutoff.get_or_insert(required_cutoff(c.alpha));
        c.husimi.half_width.get_or_insert(c.alpha + 6.0);
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// The flagship qubit scenario with every default spelled out.
pub fn default_config() -> ScenarioConfig {
    let mut c = ScenarioConfig {
        system: SystemConfig {
            omega_a: 1.0,
            initial_state: StateConfig { bloch: Some([0.0, 1.0, 0.0]), rho: None },
            dephase: false,
            h0: None,
            ht: None,
        },
        drive: DriveConfig { rotation: Some([std::f64::consts::FRAC_PI_4, 0.0, 0.0]), unitary: None },
        scheme_a: SchemeAConfig::default(),
        pointer: PointerConfig::default(),
        cqed: CqedConfig::default(),
        moments: MomentsConfig::default(),
    };
    c.apply_defaults();
    c
}
