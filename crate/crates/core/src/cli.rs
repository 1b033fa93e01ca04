// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! The `wghz` front end: `run`, `sweep` and `validate`.
//!
//! Time series go to `<stem>_<variant>.csv` with a `#`-commented header
//! (tool version, config SHA-256, seed); each command also writes
//! `<stem>.summary.json`. Identical config, seed and version give
//! byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::{load_config, ExperimentConfig, LoadedConfig, Scheme};
use crate::dynamics::{RunDiagnostics, RunResult, StepControl};
use crate::error::{Error, Result};
use crate::geometry::sigma_overlap;
use crate::hamiltonians::{
    h_off_resonant, hierarchy_check, residual_frequencies, HierarchyReport, LightShiftDrive,
};
use crate::schemes::{
    convert_w_to_ghz, pipeline_fields, positional_monte_carlo, prep_fidelity_curve,
    prepare_twisted_w, reference_pulse_areas, residual_check, twisted_ladder_pipeline,
    ResidualReport,
};

pub const TOOL: &str = "rydberg-wghz";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTEGRATION: i32 = 3;
pub const EXIT_ORTHOGONAL: i32 = 4;

pub const OUT_ENV: &str = "RYDBERG_WGHZ_OUT";
const DEFAULT_OUT: &str = "wghz-out";

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. } | Error::Domain(_) | Error::Singularity(_) => EXIT_CONFIG,
        Error::Integration(_) => EXIT_INTEGRATION,
        Error::OrthogonalDrive { .. } => EXIT_ORTHOGONAL,
        Error::Io { .. } => EXIT_FAIL,
    }
}

#[derive(Debug, Parser)]
#[command(name = "wghz", version, about = "Twisted W and W-to-GHZ simulations of Rydberg trimers")]
pub struct Cli {
    /// Repeat for more log output.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Propagate a single experiment and write its time series.
    Run(RunArgs),
    /// Evaluate a grid (θ_k curve or positional Monte Carlo).
    Sweep(SweepArgs),
    /// Check the timescale hierarchy and residual frequencies without propagating.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, env = OUT_ENV)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub config_sha256: String,
    pub seed: u64,
    pub experiment: String,
    pub variant: String,
}

impl Header {
    fn render(&self) -> String {
        format!(
            "# {TOOL} {VERSION}\n# config_sha256 {}\n# seed {}\n# experiment {}\n# variant {}\n",
            self.config_sha256, self.seed, self.experiment, self.variant
        )
    }
}

/// Shortest round-trip scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:e}")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn write_table(path: &Path, header: &Header, columns: &[String], rows: &[Vec<f64>]) -> Result<()> {
    let mut s = header.render();
    s.push_str(&columns.join(","));
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    std::fs::write(path, s).map_err(io_err(path))
}

pub fn write_timeseries(path: &Path, header: &Header, result: &RunResult) -> Result<()> {
    let n_pop = result.populations.first().map_or(0, Vec::len);
    let mut columns = vec!["t".to_string()];
    columns.extend((0..n_pop).map(|a| format!("P{a}")));
    columns.extend(result.target_names.iter().map(|n| format!("F_{n}")));
    let rows: Vec<Vec<f64>> = result
        .times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let mut row = vec![t];
            row.extend(&result.populations[k]);
            row.extend(result.fidelities.iter().map(|f| f[k]));
            row
        })
        .collect();
    write_table(path, header, &columns, &rows)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::domain(format!("summary serialization: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(io_err(path))
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub variant: String,
    pub file: String,
    pub total_time: f64,
    pub pulse_energy: f64,
    pub final_fidelities: BTreeMap<String, f64>,
    /// `[time, fidelity]` of the first maximum.
    pub peaks: BTreeMap<String, [f64; 2]>,
    pub final_populations: Vec<f64>,
    pub details: BTreeMap<String, f64>,
    pub diagnostics: RunDiagnostics,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
    pub seed: u64,
    pub experiment: String,
    pub scheme: Scheme,
    pub runs: Vec<RunRecord>,
    pub sweep: Option<serde_json::Value>,
}

#[derive(Debug, Clone)]
pub struct Outputs {
    pub files: Vec<PathBuf>,
    pub summary: Summary,
}

fn stem(cfg: &ExperimentConfig) -> String {
    let raw = cfg.output.stem.clone().unwrap_or_else(|| cfg.name.clone());
    raw.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' })
        .collect()
}

/// `--seed`, then `sampling.seed`, then 0.
pub fn resolve_seed(cli: Option<u64>, cfg: &ExperimentConfig) -> u64 {
    cli.or(cfg.sampling.seed).unwrap_or(0)
}

/// `--out` or the environment, then `output.directory`, then `wghz-out`.
pub fn resolve_out_dir(cli: Option<PathBuf>, cfg: &ExperimentConfig) -> PathBuf {
    cli.or_else(|| cfg.output.directory.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

struct Writer<'a> {
    loaded: &'a LoadedConfig,
    seed: u64,
    dir: &'a Path,
    stem: String,
    files: Vec<PathBuf>,
    runs: Vec<RunRecord>,
}

impl<'a> Writer<'a> {
    fn new(loaded: &'a LoadedConfig, seed: u64, dir: &'a Path) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
        Ok(Self {
            loaded,
            seed,
            dir,
            stem: stem(&loaded.config),
            files: Vec::new(),
            runs: Vec::new(),
        })
    }

    fn header(&self, variant: &str) -> Header {
        Header {
            config_sha256: self.loaded.sha256.clone(),
            seed: self.seed,
            experiment: self.loaded.config.name.clone(),
            variant: variant.to_string(),
        }
    }

    fn run(&mut self, variant: &str, result: &RunResult, details: BTreeMap<String, f64>) -> Result<()> {
        let path = self.dir.join(format!("{}_{variant}.csv", self.stem));
        write_timeseries(&path, &self.header(variant), result)?;
        let mut final_fidelities = BTreeMap::new();
        let mut peaks = BTreeMap::new();
        for name in &result.target_names {
            final_fidelities.insert(name.clone(), result.final_fidelity(name).unwrap_or(f64::NAN));
            if let Some((t, f)) = result.peak(name) {
                peaks.insert(name.clone(), [t, f]);
            }
        }
        self.runs.push(RunRecord {
            variant: variant.to_string(),
            file: file_name(&path),
            total_time: *result.times.last().unwrap_or(&0.0),
            pulse_energy: result.pulse_energy,
            final_fidelities,
            peaks,
            final_populations: result.final_populations().to_vec(),
            details,
            diagnostics: result.diagnostics,
        });
        self.files.push(path);
        Ok(())
    }

    fn table(&mut self, variant: &str, columns: &[&str], rows: &[Vec<f64>]) -> Result<()> {
        let path = self.dir.join(format!("{}_{variant}.csv", self.stem));
        let columns: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
        write_table(&path, &self.header(variant), &columns, rows)?;
        self.files.push(path);
        Ok(())
    }

    fn finish(mut self, sweep: Option<serde_json::Value>) -> Result<Outputs> {
        let summary = Summary {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            config_sha256: self.loaded.sha256.clone(),
            seed: self.seed,
            experiment: self.loaded.config.name.clone(),
            scheme: self.loaded.config.scheme,
            runs: std::mem::take(&mut self.runs),
            sweep,
        };
        let path = self.dir.join(format!("{}.summary.json", self.stem));
        write_json(&path, &summary)?;
        self.files.push(path);
        Ok(Outputs {
            files: self.files,
            summary,
        })
    }
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn details<const N: usize>(pairs: [(&str, f64); N]) -> BTreeMap<String, f64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Executes a propagating scheme and writes its time series.
pub fn cmd_run(loaded: &LoadedConfig, seed: u64, out_dir: &Path) -> Result<Outputs> {
    let cfg = &loaded.config;
    match cfg.scheme {
        Scheme::PrepCurve | Scheme::MonteCarlo => {
            return Err(Error::config("scheme", "sweep scheme; use `wghz sweep`"))
        }
        Scheme::Hierarchy => {
            return Err(Error::config("scheme", "diagnostic scheme; use `wghz validate`"))
        }
        _ => {}
    }
    let mut w = Writer::new(loaded, seed, out_dir)?;
    match cfg.scheme {
        Scheme::ChiralPrep => {
            let phi = cfg.geometry.twist_rad.unwrap_or(0.0);
            let t = cfg.schedule.duration_t.unwrap_or(1.0);
            let v = cfg.hamiltonian.v_per_t.unwrap_or(3000.0);
            log::info!("chiral prep Φ = {phi}, T = {t}, V = {v}");
            let run = prepare_twisted_w(phi, t, v, &cfg.step_control(StepControl::default()))?;
            let d = details([("rabi", run.rabi), ("theta_k_rad", run.alignment.theta_k)]);
            w.run("unitary", &run.result, d)?;
        }
        Scheme::WToGhz => {
            for pathway in cfg.pathways()? {
                let mut opts = cfg.conversion_options();
                let mut variants = Vec::new();
                match (cfg.noise_model(), &cfg.noise) {
                    (Some(noise), Some(block)) => {
                        if block.compare_unitary {
                            variants.push(("unitary", None));
                        }
                        variants.push(("lindblad", Some(noise)));
                    }
                    _ => variants.push(("unitary", None)),
                }
                for (label, noise) in variants {
                    opts.noise = noise;
                    log::info!("conversion via {pathway} ({label})");
                    let run = convert_w_to_ghz(pathway, &opts)?;
                    let (tp, fp) = run.peak();
                    let d = details([
                        ("conversion_time", run.conversion_time),
                        ("pulse_energy_at_conversion", run.pulse_energy),
                        ("ghz_phase_rad", run.ghz_phase),
                        ("fidelity_at_conversion", run.fidelity_at_conversion),
                        ("peak_time", tp),
                        ("peak_fidelity", fp),
                    ]);
                    w.run(&format!("{pathway}_{label}"), &run.result, d)?;
                }
            }
        }
        Scheme::TwistedPipeline => {
            let opts = cfg.pipeline_options();
            for s in cfg.alignments()? {
                log::info!("twisted pipeline at s = {s}");
                let run = twisted_ladder_pipeline(s, &opts)?;
                let d = details([
                    ("s_label", s),
                    ("sigma_abs", run.sigma_abs[0]),
                    ("prep_time", run.prep_time),
                    ("total_time", run.total_time),
                    ("min_residual_times_duration", run.residuals.product),
                    ("ghz_phase_rad", run.ghz_phase),
                ]);
                w.run(&format!("s{s}"), &run.result, d)?;
            }
        }
        _ => unreachable!("filtered above"),
    }
    w.finish(None)
}

/// Evaluates the grid of a sweep scheme on `jobs` worker threads.
pub fn cmd_sweep(loaded: &LoadedConfig, seed: u64, out_dir: &Path, jobs: Option<usize>) -> Result<Outputs> {
    let cfg = &loaded.config;
    if !cfg.scheme.is_sweep() {
        return Err(Error::config("scheme", "not a sweep scheme; use `wghz run`"));
    }
    if cfg.grid.is_none() {
        return Err(Error::config("grid", "sweep block missing"));
    }
    let mut w = Writer::new(loaded, seed, out_dir)?;
    let sweep = match cfg.scheme {
        Scheme::PrepCurve => {
            let rows = prep_fidelity_curve(&cfg.theta_grid()?)?;
            let table: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| vec![r.theta_k, r.phi, r.f_zeta10, r.f_zeta_plus, r.f_zeta_minus])
                .collect();
            w.table(
                "curve",
                &["theta_k_rad", "phi_rad", "F_zeta10", "F_zeta1+", "F_zeta1-"],
                &table,
            )?;
            serde_json::to_value(&rows)
        }
        Scheme::MonteCarlo => {
            let sigmas = cfg.sigma_grid()?;
            let samples = cfg.sampling.samples.unwrap_or(500);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::config("--jobs", e.to_string()))?;
            log::info!("monte carlo: {} grid points x {samples} samples", sigmas.len());
            let summary = pool.install(|| {
                positional_monte_carlo(&sigmas, samples, seed, &cfg.monte_carlo_options())
            })?;
            let table: Vec<Vec<f64>> = summary
                .rows
                .iter()
                .map(|r| {
                    vec![r.sigma, r.samples as f64, r.mean, r.std, r.stderr, r.sigma_d, r.min, r.max]
                })
                .collect();
            w.table(
                "summary",
                &["sigma_lambda0", "samples", "mean", "std", "stderr", "sigma_d", "min", "max"],
                &table,
            )?;
            serde_json::to_value(&summary)
        }
        _ => unreachable!("checked above"),
    }
    .map_err(|e| Error::domain(format!("summary serialization: {e}")))?;
    w.finish(Some(sweep))
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualEntry {
    pub s_label: f64,
    pub shifts: [f64; 3],
    pub fine_detunings: [f64; 3],
    /// The five uncompensated-term frequencies for these detunings.
    pub formula_frequencies: Vec<f64>,
    pub report: Option<ResidualReport>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub experiment: String,
    pub hierarchy: Option<HierarchyReport>,
    pub residuals: Vec<ResidualEntry>,
    pub pass: bool,
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "experiment {}", self.experiment)?;
        if let Some(h) = &self.hierarchy {
            writeln!(
                f,
                "hierarchy: decay bound {:e} 1/s, level spacing {:e} 1/s, T_int {:e} s",
                h.decay_rate, h.level_spacing, h.pulse_duration
            )?;
            for l in &h.links {
                writeln!(
                    f,
                    "  {:<24} ratio {:>10.4e} (need {:e})  {}",
                    l.relation,
                    l.ratio,
                    l.required,
                    if l.pass { "ok" } else { "FAIL" }
                )?;
            }
        }
        for r in &self.residuals {
            write!(f, "residuals s = {}: ", r.s_label)?;
            match (&r.report, &r.error) {
                (_, Some(e)) => writeln!(f, "FAIL ({e})")?,
                (Some(rep), None) => {
                    let rungs: Vec<String> = rep.resonant_blocks.iter().map(|n| n.to_string()).collect();
                    writeln!(
                        f,
                        "min|w_R| = {:.4}, min|w_R| T = {:.2} (need > {}), resonant blocks per field [{}]  {}",
                        rep.min_abs_frequency,
                        rep.product,
                        rep.threshold,
                        rungs.join(", "),
                        if r.pass { "ok" } else { "FAIL" }
                    )?;
                }
                (None, None) => writeln!(f, "no report")?,
            }
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn residual_entry(cfg: &ExperimentConfig, s: f64) -> Result<ResidualEntry> {
    let opts = cfg.pipeline_options();
    let drive = LightShiftDrive::from_s0(opts.s0_t0 / opts.t0, opts.omega_over_delta, opts.delta_over_v)?;
    let shifts = drive.shifts(3, 1e-9 * drive.v)?;
    let (field0, mut fields) = pipeline_fields(s, &drive, &shifts, [1.0; 3])?;
    if let Some(d) = cfg.hamiltonian.fine_detuning_per_t {
        for (f, &x) in fields.iter_mut().zip(&d) {
            f.fine_detuning = x;
        }
    }
    let fine = [fields[0].fine_detuning, fields[1].fine_detuning, fields[2].fine_detuning];
    let mut entry = ResidualEntry {
        s_label: s,
        shifts: [shifts.s0(), shifts.s1(), shifts.s2()],
        fine_detunings: fine,
        formula_frequencies: residual_frequencies(&shifts, fine),
        report: None,
        error: None,
        pass: false,
    };
    let sigma = sigma_overlap(&fields[0].site_phases, &field0.site_phases)?.norm();
    if sigma < opts.sigma_floor {
        entry.error = Some(format!("|Σ| = {sigma:.3e} below floor {}", opts.sigma_floor));
        return Ok(entry);
    }
    let duration = 9.0 * opts.t0 / (sigma * sigma);
    let areas = reference_pulse_areas();
    for (j, f) in fields.iter_mut().enumerate() {
        f.rabi = crate::linalg::C64::new(areas[j] / (0.75 * duration) * 3.0 / sigma, 0.0);
    }
    let off = h_off_resonant(3, &field0, &shifts)?;
    let report = residual_check(&off, &fields, duration, opts.residual_threshold)?;
    entry.pass = report.pass;
    entry.report = Some(report);
    Ok(entry)
}

/// Hierarchy and residual-frequency diagnostics; nothing is propagated.
pub fn cmd_validate(loaded: &LoadedConfig) -> Result<ValidationReport> {
    let cfg = &loaded.config;
    let hierarchy = cfg.hierarchy_params().map(|p| hierarchy_check(&p));
    let wants_residuals =
        cfg.scheme == Scheme::TwistedPipeline || cfg.hamiltonian.s0_per_t.is_some();
    let residuals = if wants_residuals {
        cfg.alignments()?
            .into_iter()
            .map(|s| residual_entry(cfg, s))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let pass = hierarchy.as_ref().is_none_or(|h| h.pass) && residuals.iter().all(|r| r.pass);
    Ok(ValidationReport {
        experiment: cfg.name.clone(),
        hierarchy,
        residuals,
        pass,
    })
}

fn report_outputs(out: &Outputs) -> String {
    let mut s = String::new();
    for run in &out.summary.runs {
        let fids: Vec<String> = run
            .final_fidelities
            .iter()
            .map(|(k, v)| format!("{k}={v:.6}"))
            .collect();
        let _ = writeln!(s, "{}: T = {:.6}, {}", run.variant, run.total_time, fids.join(" "));
    }
    for f in &out.files {
        let _ = writeln!(s, "wrote {}", f.display());
    }
    s
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_code(e)
}

/// Dispatches a parsed command line; returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    match cli.command {
        Command::Run(args) => {
            let loaded = match load_config(&args.config) {
                Ok(l) => l,
                Err(e) => return fail(&e),
            };
            let seed = resolve_seed(args.seed, &loaded.config);
            let dir = resolve_out_dir(args.out, &loaded.config);
            match cmd_run(&loaded, seed, &dir) {
                Ok(out) => {
                    print!("{}", report_outputs(&out));
                    EXIT_OK
                }
                Err(e) => fail(&e),
            }
        }
        Command::Sweep(args) => {
            let loaded = match load_config(&args.run.config) {
                Ok(l) => l,
                Err(e) => return fail(&e),
            };
            let seed = resolve_seed(args.run.seed, &loaded.config);
            let dir = resolve_out_dir(args.run.out, &loaded.config);
            match cmd_sweep(&loaded, seed, &dir, args.jobs) {
                Ok(out) => {
                    print!("{}", report_outputs(&out));
                    EXIT_OK
                }
                Err(e) => fail(&e),
            }
        }
        Command::Validate(args) => {
            let loaded = match load_config(&args.config) {
                Ok(l) => l,
                Err(e) => return fail(&e),
            };
            match cmd_validate(&loaded) {
                Ok(report) => {
                    if args.json {
                        println!("{}", serde_json::to_string_pretty(&report).unwrap_or_default());
                    } else {
                        println!("{report}");
                    }
                    if report.pass {
                        EXIT_OK
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(e) => fail(&e),
            }
        }
    }
}

/// Parses `std::env::args`, sets up logging and runs.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).init();
    execute(cli)
}
