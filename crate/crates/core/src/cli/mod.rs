//! The `workdist` command line: one JSON scenario in, CSV (and optionally
//! SVG) tables out.

pub mod config;
pub mod output;
pub mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::cqed::{self, DispersiveParams, HusimiGridSpec};
use crate::error::Error;
use crate::numerics::{pauli_z, unitary_from_bloch};
use crate::pointer::{self, GaussianPointer};
use crate::scheme_a::{self, FftReconstruction, WorkQuasiDistribution};
use crate::system::{dephase, transition_table, InitialState, SystemScenario, TransitionTable};
use crate::C64;

pub use config::{default_config, parse_config, ConfigError, ScenarioConfig};
pub use output::{config_hash, format_number, ResultTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const THREADS_ENV: &str = "WORKDIST_THREADS";

const COLUMNS_HELP: &str = "\
Output files (CSV, '#' header lines carry version, command and config hash):
  scheme-a       scheme_a_atoms.csv           work, weight, classical, interference
                 scheme_a_characteristic.csv  lambda, re, im
                 scheme_a_fft.csv             work, density
  pointer        pointer.csv                  delta_x, x, density
  cqed-scheme-a  cqed_scheme_a_atoms.csv      work, weight, classical, interference
                 cqed_scheme_a_characteristic.csv
                                              phi, re, im, raw_re, raw_im
  cqed-husimi    cqed_husimi.csv              re, im, q
  cqed-angular   cqed_angular.csv             theta, density
  moments        moments.csv                  order, analytic, finite_difference
With --svg each command also writes a matching .svg chart.
Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure, 4 I/O error.
WORKDIST_THREADS sets the worker count (0 runs sequentially).";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Characteristic function, quasiprobability atoms and FFT reconstruction.
    SchemeA,
    /// Gaussian pointer position distribution.
    Pointer,
    /// Cavity Fock-coherence characteristic function.
    CqedSchemeA,
    /// Husimi function of the cavity after the protocol.
    CqedHusimi,
    /// Angular work distribution of the coherent-state readout.
    CqedAngular,
    /// Work moments, analytic and by finite differences of the characteristic function.
    Moments,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::SchemeA => "scheme-a",
            Command::Pointer => "pointer",
            Command::CqedSchemeA => "cqed-scheme-a",
            Command::CqedHusimi => "cqed-husimi",
            Command::CqedAngular => "cqed-angular",
            Command::Moments => "moments",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "workdist", version, about = "Work statistics of a driven qubit read out by a quantum detector", after_help = COLUMNS_HELP)]
struct Args {
    command: Command,
    /// Scenario JSON file.
    #[arg(long, required_unless_present = "print_defaults")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write SVG charts.
    #[arg(long)]
    svg: bool,
    /// Print the configuration with every default filled in, then exit.
    #[arg(long)]
    print_defaults: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error at {0}")]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] Error),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

/// A file produced by [`run`], not yet written.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

fn config_err(path: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::Config(ConfigError::new(path, e.to_string()))
}

/// Validated physical inputs for one scenario.
pub struct Prepared {
    pub scenario: SystemScenario,
    pub table: TransitionTable,
    pub state: InitialState,
}

pub fn prepare(config: &ScenarioConfig) -> Result<Prepared, CliError> {
    let s = &config.system;
    let h0 = match &s.h0 {
        Some(m) => config::matrix_from_config(m, "system.h0")?,
        None => pauli_z().scale(C64::new(0.5 * s.omega_a, 0.0)),
    };
    let ht = match &s.ht {
        Some(m) => config::matrix_from_config(m, "system.ht")?,
        None => h0.clone(),
    };
    let u = match (&config.drive.rotation, &config.drive.unitary) {
        (Some(n), _) => {
            if h0.rows() != 2 {
                return Err(ConfigError::new("drive.rotation", "a Bloch rotation needs a two-level system").into());
            }
            unitary_from_bloch(*n)
        }
        (None, Some(m)) => config::matrix_from_config(m, "drive.unitary")?,
        (None, None) => unreachable!("validated"),
    };
    let scenario = SystemScenario::new(h0, ht, u).map_err(config_err("system"))?;
    let state = match (&s.initial_state.bloch, &s.initial_state.rho) {
        (Some(b), _) => InitialState::from_bloch(*b).map_err(config_err("system.initial_state.bloch"))?,
        (None, Some(m)) => InitialState::from_matrix(config::matrix_from_config(m, "system.initial_state.rho")?)
            .map_err(config_err("system.initial_state.rho"))?,
        (None, None) => unreachable!("validated"),
    };
    if state.dim() != scenario.dim() {
        return Err(ConfigError::new(
            "system.initial_state",
            format!("state dimension {} does not match Hamiltonian dimension {}", state.dim(), scenario.dim()),
        )
        .into());
    }
    let table = transition_table(&scenario)?;
    let state = if s.dephase { dephase(&state, &table.basis0)? } else { state };
    Ok(Prepared { scenario, table, state })
}

fn cqed_inputs(config: &ScenarioConfig, prepared: &Prepared) -> Result<DispersiveParams, CliError> {
    if config.system.h0.is_some() || config.system.ht.is_some() {
        return Err(ConfigError::new("system.h0", "cqed commands use the qubit Hamiltonian; remove h0/ht").into());
    }
    if prepared.state.dim() != 2 {
        return Err(ConfigError::new("system.initial_state", "cqed commands need a qubit").into());
    }
    let c = &config.cqed;
    DispersiveParams::new(c.phi, c.alpha, c.fock_cutoff).map_err(config_err("cqed.fock_cutoff"))
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn atoms_table(dist: &WorkQuasiDistribution) -> ResultTable {
    let mut t = ResultTable::new(vec!["work", "weight", "classical", "interference"]);
    let part = |atoms: &[scheme_a::WorkAtom], w: f64| {
        WorkQuasiDistribution::from_parts(atoms.to_vec(), Vec::new(), Vec::new()).weight_at(w)
    };
    for a in dist.atoms() {
        t.push(vec![a.work, a.weight, part(dist.classical_part(), a.work), part(dist.interference_part(), a.work)]);
    }
    t
}

struct Emitter<'a> {
    command: Command,
    hash: &'a str,
    svg: bool,
    files: Vec<OutputFile>,
}

impl Emitter<'_> {
    fn csv(&mut self, name: &str, mut table: ResultTable) {
        table.sort();
        self.files.push(OutputFile { name: format!("{name}.csv"), contents: table.to_csv(self.command.name(), self.hash) });
    }

    fn svg(&mut self, name: &str, build: impl FnOnce() -> String) {
        if self.svg {
            self.files.push(OutputFile { name: format!("{name}.svg"), contents: build() });
        }
    }
}

/// Runs one command and returns the files it produces, in a fixed order.
pub fn run(command: Command, config: &ScenarioConfig, hash: &str, svg: bool) -> Result<Vec<OutputFile>, CliError> {
    let prepared = prepare(config)?;
    let mut em = Emitter { command, hash, svg, files: Vec::new() };
    let Prepared { table, state, .. } = &prepared;
    match command {
        Command::SchemeA => {
            let cfg = &config.scheme_a;
            let sum = scheme_a::characteristic_function(state, table)?;
            let dist = scheme_a::quasiprobability(&sum)?;
            let atoms = atoms_table(&dist);
            em.svg("scheme_a_atoms", || {
                let xs: Vec<f64> = dist.atoms().iter().map(|a| a.work).collect();
                let ys: Vec<f64> = dist.atoms().iter().map(|a| a.weight).collect();
                svg::stem_plot("Work quasiprobability", "W", "P(W)", &xs, &ys)
            });
            em.csv("scheme_a_atoms", atoms);
            let lambdas = linspace(0.0, cfg.characteristic_lambda_max, cfg.characteristic_points);
            let values: Vec<C64> = lambdas.iter().map(|&l| sum.evaluate(l)).collect();
            let mut g = ResultTable::new(vec!["lambda", "re", "im"]);
            for (l, v) in lambdas.iter().zip(&values) {
                g.push(vec![*l, v.re, v.im]);
            }
            em.csv("scheme_a_characteristic", g);
            em.svg("scheme_a_characteristic", || {
                let re: Vec<f64> = values.iter().map(|v| v.re).collect();
                let im: Vec<f64> = values.iter().map(|v| v.im).collect();
                svg::line_plot("Characteristic function", "λ", "G(λ)", &[("Re G", &lambdas, &re), ("Im G", &lambdas, &im)])
            });
            if cfg.fft {
                let params = FftReconstruction { lambda_max: cfg.lambda_max, samples: cfg.samples, window_sigma: cfg.window_sigma };
                let density = scheme_a::reconstruct_fft(&sum, &params)?;
                let mut t = ResultTable::new(vec!["work", "density"]);
                for (w, p) in density.work.iter().zip(&density.density) {
                    t.push(vec![*w, *p]);
                }
                em.csv("scheme_a_fft", t);
                em.svg("scheme_a_fft", || {
                    svg::line_plot("Broadened quasiprobability", "W", "density", &[("FFT", &density.work, &density.density)])
                });
            }
        }
        Command::Pointer => {
            let cfg = &config.pointer;
            let p = GaussianPointer::new(cfg.x0, cfg.sigma, cfg.shift_per_energy).map_err(config_err("pointer"))?;
            let grid = match cfg.grid_range {
                Some([lo, hi]) => linspace(lo, hi, cfg.grid_points),
                None => pointer::default_grid(table, &p, cfg.grid_points),
            };
            let dist = pointer::pointer_distribution(state, table, &p, &grid)?;
            let xs = dist.positions(&p);
            let mut t = ResultTable::new(vec!["delta_x", "x", "density"]);
            for ((dx, x), d) in dist.grid.iter().zip(&xs).zip(&dist.density) {
                t.push(vec![*dx, *x, *d]);
            }
            em.csv("pointer", t);
            em.svg("pointer", || svg::line_plot("Pointer distribution", "Δx", "P(Δx)", &[("P", &dist.grid, &dist.density)]));
        }
        Command::CqedSchemeA => {
            cqed_inputs(config, &prepared)?;
            let u = prepared.scenario.unitary();
            let sum = cqed::cqed_characteristic_function(state, u)?;
            let dist = scheme_a::quasiprobability(&sum)?;
            em.csv("cqed_scheme_a_atoms", atoms_table(&dist));
            let c = &config.cqed;
            let phis = linspace(0.0, c.phi_max, c.phi_points);
            let mut t = ResultTable::new(vec!["phi", "re", "im", "raw_re", "raw_im"]);
            let mut re = Vec::new();
            let mut raw_re = Vec::new();
            for &phi in &phis {
                let g = sum.evaluate_control(phi);
                let raw = cqed::raw_fock_coherence(state, u, phi, c.nbar - 1, c.nbar + 1)?;
                t.push(vec![phi, g.re, g.im, raw.re, raw.im]);
                re.push(g.re);
                raw_re.push(raw.re);
            }
            em.csv("cqed_scheme_a_characteristic", t);
            em.svg("cqed_scheme_a_characteristic", || {
                svg::line_plot("Cavity phase record", "φ", "Re", &[("Re G", &phis, &re), ("Re raw", &phis, &raw_re)])
            });
        }
        Command::CqedHusimi => {
            let params = cqed_inputs(config, &prepared)?;
            let g = cqed::coherent_amplitudes(params.alpha(), params.fock_cutoff())?;
            let rho = cqed::cavity_state_after_protocol(state, prepared.scenario.unitary(), &g, &params)?;
            let h = &config.cqed.husimi;
            let spec = HusimiGridSpec::square(h.half_width.expect("filled by parse"), h.points);
            let grid = cqed::husimi_q(&rho, &spec);
            let (re, im) = (spec.re_axis(), spec.im_axis());
            let mut t = ResultTable::new(vec!["re", "im", "q"]);
            for (ix, x) in re.iter().enumerate() {
                for (iy, y) in im.iter().enumerate() {
                    t.push(vec![*x, *y, grid.value(ix, iy)]);
                }
            }
            em.csv("cqed_husimi", t);
            em.svg("cqed_husimi", || {
                svg::heatmap("Husimi Q", (spec.re_min, spec.re_max), (spec.im_min, spec.im_max), spec.re_points, spec.im_points, &grid.values)
            });
        }
        Command::CqedAngular => {
            let params = cqed_inputs(config, &prepared)?;
            let thetas = cqed::uniform_theta_grid(config.cqed.theta_points);
            let dist = cqed::angular_distribution(state, prepared.scenario.unitary(), &params, &thetas)?;
            let mut t = ResultTable::new(vec!["theta", "density"]);
            for (th, p) in dist.theta.iter().zip(&dist.density) {
                t.push(vec![*th, *p]);
            }
            em.csv("cqed_angular", t);
            em.svg("cqed_angular", || svg::line_plot("Angular distribution", "θ", "P(θ)", &[("P", &dist.theta, &dist.density)]));
        }
        Command::Moments => {
            let sum = scheme_a::characteristic_function(state, table)?;
            let step = config.moments.fd_step.unwrap_or_else(|| scheme_a::default_fd_step(&sum));
            let mut t = ResultTable::new(vec!["order", "analytic", "finite_difference"]);
            for n in 1..=scheme_a::MAX_MOMENT_ORDER {
                let exact = scheme_a::moments_analytic(&sum, n)?;
                let fd = scheme_a::moments_finite_difference(&sum, n, step)?;
                t.push(vec![n as f64, exact, fd]);
            }
            em.csv("moments", t);
        }
    }
    Ok(em.files)
}

fn write_files(dir: &Path, files: &[OutputFile]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for f in files {
        let path = dir.join(&f.name);
        std::fs::write(&path, &f.contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn thread_count() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map(|n| Some(n.max(1))).map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(None),
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    if args.print_defaults {
        let config = match &args.config {
            Some(path) => {
                let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                parse_config(&bytes)?
            }
            None => default_config(),
        };
        println!("{}", config.to_json_pretty());
        return Ok(());
    }
    let path = args.config.as_ref().expect("clap enforces --config");
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let config = parse_config(&bytes)?;
    let files = run(args.command, &config, &config_hash(&bytes), args.svg)?;
    write_files(&args.out, &files)?;
    for f in &files {
        println!("{}", args.out.join(&f.name).display());
    }
    Ok(())
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return EXIT_OK;
            }
            if e.kind() != clap::error::ErrorKind::MissingRequiredArgument {
                eprintln!("\n{}", <Args as clap::CommandFactory>::command().render_usage());
            }
            return EXIT_CONFIG;
        }
    };
    let threads = match thread_count() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_CONFIG;
        }
    };
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&args)),
            Err(e) => Err(CliError::Io(format!("thread pool: {e}"))),
        },
        None => execute(&args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_command_is_usage_error() {
        assert_eq!(main_with_args(["workdist", "frobnicate", "--config", "x.json"]), EXIT_CONFIG);
    }

    #[test]
    fn flagship_atoms() {
        let files = run(Command::SchemeA, &default_config(), "h", false).unwrap();
        let atoms = output::read_csv_rows(&files[0].contents);
        let expected = [(-1.0, 0.25), (-0.5, -0.5), (0.0, 0.5), (0.5, 0.5), (1.0, 0.25)];
        assert_eq!(atoms.len(), 5);
        for (row, (w, p)) in atoms.iter().zip(expected) {
            assert!((row[0] - w).abs() < 1e-12 && (row[1] - p).abs() < 1e-12, "{row:?}");
        }
    }

    #[test]
    fn cqed_rejects_explicit_hamiltonian() {
        let mut c = default_config();
        c.system.h0 = Some(vec![vec![config::Entry::Real(0.5), config::Entry::Real(0.0)], vec![config::Entry::Real(0.0), config::Entry::Real(-0.5)]]);
        assert_eq!(run(Command::CqedAngular, &c, "h", false).unwrap_err().exit_code(), EXIT_CONFIG);
    }

    #[test]
    fn unresolvable_fft_is_numerical_failure() {
        let mut c = default_config();
        c.scheme_a.window_sigma = 1e-3;
        assert_eq!(run(Command::SchemeA, &c, "h", false).unwrap_err().exit_code(), EXIT_NUMERICAL);
    }

    #[test]
    fn moments_table_has_six_orders() {
        let files = run(Command::Moments, &default_config(), "h", false).unwrap();
        let rows = output::read_csv_rows(&files[0].contents);
        assert_eq!(rows.len(), 6);
        assert!((rows[0][1] - 0.5).abs() < 1e-12);
        for r in rows {
            assert!((r[1] - r[2]).abs() < 1e-6 * r[1].abs().max(1.0), "{r:?}");
        }
    }
}
