// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! TOML experiment configuration.
//!
//! Every physical key carries its unit as a suffix: `_t` (units of the run's
//! characteristic time T), `_per_t` (rates and energies over ħ in 1/T),
//! `_lambda0` (lengths in the resonance wavelength), `_rad`, `_s` and `_per_s`
//! (SI, hierarchy checks only). Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dynamics::{NoiseModel, StepControl, MIN_STEPS_PER_PERIOD};
use crate::error::{Error, Result};
use crate::hamiltonians::{HierarchyParams, ZetaAlignment};
use crate::schemes::{ConversionOptions, MonteCarloOptions, PipelineOptions};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    ChiralPrep,
    WToGhz,
    TwistedPipeline,
    PrepCurve,
    MonteCarlo,
    /// Diagnostics only.
    Hierarchy,
}

impl Scheme {
    pub fn is_sweep(self) -> bool {
        matches!(self, Scheme::PrepCurve | Scheme::MonteCarlo)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub name: String,
    pub scheme: Scheme,
    #[serde(default)]
    pub geometry: GeometryBlock,
    #[serde(default)]
    pub hamiltonian: HamiltonianBlock,
    #[serde(default)]
    pub schedule: ScheduleBlock,
    pub noise: Option<NoiseBlock>,
    pub grid: Option<GridBlock>,
    #[serde(default)]
    pub sampling: SamplingBlock,
    #[serde(default)]
    pub integrator: IntegratorBlock,
    pub hierarchy: Option<HierarchyBlock>,
    #[serde(default)]
    pub output: OutputBlock,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryBlock {
    pub side_lambda0: Option<f64>,
    /// Twist `Φ` of the preparation field.
    pub twist_rad: Option<f64>,
    /// Alignment labels `s = 3 sin θ_k` of the pipeline fields.
    pub alignment_s: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianBlock {
    pub v_per_t: Option<f64>,
    pub pathways: Option<Vec<String>>,
    /// `T s₀/ħ` of the strong field.
    pub s0_per_t: Option<f64>,
    pub omega0_over_delta0: Option<f64>,
    pub delta0_over_v: Option<f64>,
    pub sigma_floor: Option<f64>,
    /// Overrides the compensating fine detunings (validation only).
    pub fine_detuning_per_t: Option<[f64; 3]>,
    pub residual_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleBlock {
    pub duration_t: Option<f64>,
    /// Simulated window in units of the conversion time.
    pub window: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseBlock {
    pub gamma_decay_per_t: f64,
    pub gamma_dephase_per_t: f64,
    /// Also write the unitary reference run.
    #[serde(default = "yes")]
    pub compare_unitary: bool,
}

fn yes() -> bool {
    true
}

/// Either explicit values or `points` evenly spaced over `[start, stop]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridAxis {
    Values(Vec<f64>),
    Range { start: f64, stop: f64, points: usize },
}

impl GridAxis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            GridAxis::Values(v) => v.clone(),
            GridAxis::Range { start, stop, points } => {
                crate::schemes::theta_grid(*start, *stop, *points)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub theta_k_rad: Option<GridAxis>,
    pub sigma_lambda0: Option<GridAxis>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingBlock {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub perturb_phases: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorBlock {
    pub steps_per_period: Option<f64>,
    pub min_steps_per_segment: Option<usize>,
    pub record_points: Option<usize>,
    pub verify_halving: Option<bool>,
    pub halving_tolerance: Option<f64>,
}

impl IntegratorBlock {
    pub fn apply(&self, mut c: StepControl) -> StepControl {
        if let Some(x) = self.steps_per_period {
            c.steps_per_period = x;
        }
        if let Some(x) = self.min_steps_per_segment {
            c.min_steps_per_segment = x;
        }
        if let Some(x) = self.record_points {
            c.record_points = x;
        }
        if let Some(x) = self.verify_halving {
            c.verify_halving = x;
        }
        if let Some(x) = self.halving_tolerance {
            c.halving_tolerance = x;
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchyBlock {
    pub principal_n: u32,
    pub rabi_per_s: f64,
    pub stark_shift_per_s: f64,
    pub kappa_per_s: Option<f64>,
    pub ionization_rate_per_s: Option<f64>,
    pub pulse_duration_s: Option<f64>,
    /// Binds T to seconds; the pulse lasts `schedule.duration_t` of it.
    pub time_unit_s: Option<f64>,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    pub directory: Option<String>,
    pub stem: Option<String>,
}

/// A parsed config together with the SHA-256 of its source text.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: ExperimentConfig,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses and validates `text`; `origin` labels diagnostics.
pub fn parse_config(text: &str, origin: &str) -> Result<LoadedConfig> {
    let config: ExperimentConfig = toml::from_str(text).map_err(|e| {
        let msg = e.message().to_string();
        match e.span() {
            Some(span) => {
                let line = text[..span.start].matches('\n').count() + 1;
                let path = key_path(text, span.start).unwrap_or_else(|| origin.to_string());
                Error::config(path, format!("{msg} ({origin}:{line})"))
            }
            None => Error::config(origin, msg),
        }
    })?;
    config.validate()?;
    Ok(LoadedConfig {
        config,
        sha256: sha256_hex(text.as_bytes()),
    })
}

/// Dotted key of the assignment or table header that contains byte `at`.
fn key_path(text: &str, at: usize) -> Option<String> {
    let start = text[..at].rfind('\n').map_or(0, |i| i + 1);
    let line = text[start..].lines().next()?.trim();
    if line.starts_with('[') {
        return Some(line.trim_matches(|c| c == '[' || c == ']').trim().to_string());
    }
    let key = line.split('=').next()?.trim();
    if key.is_empty() {
        return None;
    }
    let table = text[..start]
        .lines()
        .rev()
        .map(str::trim)
        .find(|l| l.starts_with('['))
        .map(|l| l.trim_matches(|c| c == '[' || c == ']').trim().to_string());
    Some(match table {
        Some(t) => format!("{t}.{key}"),
        None => key.to_string(),
    })
}

pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text, &path.display().to_string())
}

fn positive(path: &str, x: Option<f64>) -> Result<()> {
    match x {
        Some(v) if !(v > 0.0 && v.is_finite()) => {
            Err(Error::config(path, format!("must be positive and finite, got {v}")))
        }
        _ => Ok(()),
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::config(
                "schema_version",
                format!("unsupported version {} (expected {SCHEMA_VERSION})", self.schema_version),
            ));
        }
        if self.name.trim().is_empty() {
            return Err(Error::config("name", "must not be empty"));
        }
        positive("geometry.side_lambda0", self.geometry.side_lambda0)?;
        positive("hamiltonian.v_per_t", self.hamiltonian.v_per_t)?;
        positive("hamiltonian.sigma_floor", self.hamiltonian.sigma_floor)?;
        positive("schedule.duration_t", self.schedule.duration_t)?;
        positive("integrator.steps_per_period", self.integrator.steps_per_period)?;
        if let Some(x) = self.integrator.steps_per_period {
            if x < MIN_STEPS_PER_PERIOD {
                return Err(Error::config(
                    "integrator.steps_per_period",
                    format!("{x} is below the minimum of {MIN_STEPS_PER_PERIOD}"),
                ));
            }
        }
        positive("integrator.halving_tolerance", self.integrator.halving_tolerance)?;
        if let Some(w) = self.schedule.window {
            if !(w >= 1.0 && w.is_finite()) {
                return Err(Error::config("schedule.window", "must be at least 1"));
            }
        }
        if let Some(n) = &self.noise {
            NoiseModel::new(n.gamma_decay_per_t, n.gamma_dephase_per_t)
                .map_err(|_| Error::config("noise", "rates must be non-negative"))?;
        }
        self.pathways()?;
        if let Some(phi) = self.geometry.twist_rad {
            if !(phi.abs() <= 2.0 * std::f64::consts::PI) {
                return Err(Error::config("geometry.twist_rad", "|Φ| must not exceed 2π"));
            }
        }
        match self.scheme {
            Scheme::ChiralPrep if self.geometry.twist_rad.is_none() => {
                return Err(Error::config("geometry.twist_rad", "required by chiral_prep"));
            }
            Scheme::TwistedPipeline => {
                let s = self.alignments()?;
                if s.is_empty() {
                    return Err(Error::config("geometry.alignment_s", "must not be empty"));
                }
            }
            Scheme::PrepCurve => {
                let g = self.theta_grid()?;
                if g.is_empty() {
                    return Err(Error::config("grid.theta_k_rad", "empty grid"));
                }
            }
            Scheme::MonteCarlo => {
                let g = self.sigma_grid()?;
                if g.is_empty() {
                    return Err(Error::config("grid.sigma_lambda0", "empty grid"));
                }
                if self.sampling.samples == Some(0) {
                    return Err(Error::config("sampling.samples", "must be at least 1"));
                }
            }
            Scheme::Hierarchy if self.hierarchy.is_none() => {
                return Err(Error::config("hierarchy", "required by the hierarchy scheme"));
            }
            _ => {}
        }
        if let Some(h) = &self.hierarchy {
            if h.principal_n == 0 {
                return Err(Error::config("hierarchy.principal_n", "must be at least 1"));
            }
        }
        Ok(())
    }

    pub fn pathways(&self) -> Result<Vec<ZetaAlignment>> {
        match &self.hamiltonian.pathways {
            None => Ok(vec![ZetaAlignment::Aligned]),
            Some(list) if list.is_empty() => {
                Err(Error::config("hamiltonian.pathways", "must not be empty"))
            }
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    s.parse().map_err(|_| {
                        Error::config(
                            format!("hamiltonian.pathways[{i}]"),
                            format!("unknown pathway `{s}` (zeta20, zeta2minus, zeta2plus)"),
                        )
                    })
                })
                .collect(),
        }
    }

    pub fn alignments(&self) -> Result<Vec<f64>> {
        let s = self.geometry.alignment_s.clone().unwrap_or_else(|| vec![0.0]);
        if let Some((i, bad)) = s.iter().enumerate().find(|(_, x)| !(0.0..=3.0).contains(*x)) {
            return Err(Error::config(
                format!("geometry.alignment_s[{i}]"),
                format!("{bad} outside [0, 3]"),
            ));
        }
        Ok(s)
    }

    fn grid_axis(&self, name: &str, pick: impl Fn(&GridBlock) -> Option<&GridAxis>) -> Result<Vec<f64>> {
        let path = format!("grid.{name}");
        let axis = self
            .grid
            .as_ref()
            .and_then(pick)
            .ok_or_else(|| Error::config(&path, "sweep grid missing"))?;
        if let GridAxis::Range { points: 0, .. } = axis {
            return Err(Error::config(&path, "empty grid"));
        }
        Ok(axis.values())
    }

    pub fn theta_grid(&self) -> Result<Vec<f64>> {
        let g = self.grid_axis("theta_k_rad", |g| g.theta_k_rad.as_ref())?;
        if let Some(bad) = g.iter().find(|t| !(0.0..=std::f64::consts::FRAC_PI_2).contains(*t)) {
            return Err(Error::config("grid.theta_k_rad", format!("{bad} outside [0, π/2]")));
        }
        Ok(g)
    }

    pub fn sigma_grid(&self) -> Result<Vec<f64>> {
        let g = self.grid_axis("sigma_lambda0", |g| g.sigma_lambda0.as_ref())?;
        if let Some(bad) = g.iter().find(|s| !(**s >= 0.0 && s.is_finite())) {
            return Err(Error::config("grid.sigma_lambda0", format!("{bad} must be non-negative")));
        }
        Ok(g)
    }

    pub fn step_control(&self, base: StepControl) -> StepControl {
        self.integrator.apply(base)
    }

    pub fn noise_model(&self) -> Option<NoiseModel> {
        self.noise
            .as_ref()
            .map(|n| NoiseModel {
                gamma_decay: n.gamma_decay_per_t,
                gamma_dephase: n.gamma_dephase_per_t,
            })
    }

    pub fn conversion_options(&self) -> ConversionOptions {
        let d = ConversionOptions::default();
        ConversionOptions {
            v_over_hbar: self.hamiltonian.v_per_t.unwrap_or(d.v_over_hbar),
            t0: self.schedule.duration_t.unwrap_or(d.t0),
            window: self.schedule.window.unwrap_or(d.window),
            noise: None,
            control: self.step_control(d.control),
        }
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        let d = PipelineOptions::default();
        let h = &self.hamiltonian;
        PipelineOptions {
            s0_t0: h.s0_per_t.unwrap_or(d.s0_t0),
            omega_over_delta: h.omega0_over_delta0.unwrap_or(d.omega_over_delta),
            delta_over_v: h.delta0_over_v.unwrap_or(d.delta_over_v),
            t0: self.schedule.duration_t.unwrap_or(d.t0),
            sigma_floor: h.sigma_floor.unwrap_or(d.sigma_floor),
            residual_threshold: h.residual_threshold.unwrap_or(d.residual_threshold),
            control: self.step_control(d.control),
        }
    }

    pub fn monte_carlo_options(&self) -> MonteCarloOptions {
        let d = MonteCarloOptions::default();
        MonteCarloOptions {
            v_ref: self.hamiltonian.v_per_t.unwrap_or(d.v_ref),
            side: self.geometry.side_lambda0.unwrap_or(d.side),
            t0: self.schedule.duration_t.unwrap_or(d.t0),
            perturb_phases: self.sampling.perturb_phases,
            control: self.step_control(d.control),
        }
    }

    pub fn hierarchy_params(&self) -> Option<HierarchyParams> {
        self.hierarchy.as_ref().map(|h| {
            let mut p = HierarchyParams::new(h.principal_n, h.rabi_per_s, h.stark_shift_per_s);
            if let Some(k) = h.kappa_per_s {
                p.kappa = k;
            }
            if let Some(e) = h.ionization_rate_per_s {
                p.ionization_rate = e;
            }
            if let Some(m) = h.margin {
                p.margin = m;
            }
            p.pulse_duration = h.pulse_duration_s.or_else(|| {
                h.time_unit_s
                    .map(|unit| unit * self.schedule.duration_t.unwrap_or(1.0))
            });
            p
        })
    }
}
