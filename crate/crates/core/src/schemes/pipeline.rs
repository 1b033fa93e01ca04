// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Prep plus conversion on the twisted ladder of a strongly light-shifted
//! trimer.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dynamics::{evolve_pure, NamedTarget, PulseSchedule, RunResult, StepControl, Target};
use crate::error::{Error, Result};
use crate::geometry::{triangle_site_phases, LaserAlignment, PotentialTable};
use crate::hamiltonians::{
    drive_spectrum, fine_detunings, h_full_driven, h_off_resonant, h_twisted_ladder, EnergyShifts,
    Frame, LaserField, LightShiftDrive, TwistedLadder,
};
use crate::linalg::{unitary_propagator, C64};
use crate::states::{OperatorMatrix, StateVector};

use super::conversion::reference_pulse_areas;
use super::prep::PREP_SIDE;

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    /// `T₀ s₀` of the strong field.
    pub s0_t0: f64,
    /// `Ω₀ / Δ₀`
    pub omega_over_delta: f64,
    /// `Δ₀ / V`
    pub delta_over_v: f64,
    pub t0: f64,
    pub sigma_floor: f64,
    /// Lower bound on `min|ω_R| T`.
    pub residual_threshold: f64,
    pub control: StepControl,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            s0_t0: -1247.0,
            omega_over_delta: -0.03,
            delta_over_v: -0.7,
            t0: 1.0,
            sigma_floor: 0.1,
            residual_threshold: 600.0,
            control: StepControl::default(),
        }
    }
}

/// Residual terms of the drives in the light-shift eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Nonzero oscillation frequencies of every driven block.
    pub frequencies: Vec<f64>,
    /// Number of resonant blocks per field.
    pub resonant_blocks: Vec<usize>,
    pub min_abs_frequency: f64,
    pub duration: f64,
    pub product: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Splits the drive spectrum into resonant and residual blocks and checks
/// `min|ω_R| · duration > threshold` with every field resonant somewhere.
pub fn residual_check(
    off: &OperatorMatrix,
    fields: &[LaserField],
    duration: f64,
    threshold: f64,
) -> Result<ResidualReport> {
    let spectrum = drive_spectrum(off, fields)?;
    let scale = crate::linalg::max_abs(off.matrix()).max(1.0);
    let resonant_tol = 1e-6 * scale;
    let mut resonant_blocks = vec![0; fields.len()];
    let mut frequencies = Vec::new();
    for term in &spectrum {
        if term.frequency.abs() <= resonant_tol {
            if let Some(j) = fields.iter().position(|f| f.label == term.field) {
                resonant_blocks[j] += 1;
            }
        } else {
            frequencies.push(term.frequency);
        }
    }
    let min_abs = frequencies
        .iter()
        .map(|w| w.abs())
        .fold(f64::INFINITY, f64::min);
    let product = min_abs * duration;
    let driven = fields.iter().map(|f| f.rabi.norm() > 0.0);
    let all_resonant = resonant_blocks
        .iter()
        .zip(driven)
        .all(|(&n, on)| !on || n > 0);
    Ok(ResidualReport {
        frequencies,
        resonant_blocks,
        min_abs_frequency: min_abs,
        duration,
        product,
        threshold,
        pass: all_resonant && product > threshold,
    })
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub s_label: f64,
    pub shifts: EnergyShifts,
    pub drive: LightShiftDrive,
    pub sigma_abs: [f64; 3],
    pub prep_time: f64,
    pub conversion_time: f64,
    pub total_time: f64,
    pub prep_rabi: f64,
    pub conversion_rabis: [f64; 3],
    pub pulse_energy: f64,
    pub residuals: ResidualReport,
    pub ghz_phase: f64,
    pub result: RunResult,
}

/// Field set of the pipeline at alignment `s = 3 sin θ_k` with Rabi values
/// `rabis` on fields 1, 2, 3.
pub fn pipeline_fields(
    s_label: f64,
    drive: &LightShiftDrive,
    shifts: &EnergyShifts,
    rabis: [f64; 3],
) -> Result<(LaserField, Vec<LaserField>)> {
    if !(0.0..=3.0).contains(&s_label) {
        return Err(Error::domain(format!("alignment label s = {s_label} outside [0, 3]")));
    }
    let field0 = LaserField::new(0, C64::new(drive.omega0, 0.0), vec![0.0; 3])
        .with_detuning(drive.delta0, 0.0);
    let alignment = LaserAlignment::new((s_label / 3.0).asin(), PI / 2.0);
    let phases = triangle_site_phases(&alignment, PREP_SIDE);
    let deltas = fine_detunings(shifts);
    let fields = (0..3)
        .map(|j| {
            LaserField::new(j + 1, C64::new(rabis[j], 0.0), phases.clone())
                .with_detuning(j as f64 * drive.v, deltas[j])
        })
        .collect();
    Ok((field0, fields))
}

/// Runs the pipeline from `|ggg⟩`: a π-pulse on field 1 for the first
/// quarter, then constant Rabi values on all three fields. Every Rabi value
/// carries a factor `3/|Σ|`, so the stage times scale as `9T₀/|Σ|²` and the
/// pulse energy is the same for every alignment.
pub fn twisted_ladder_pipeline(s_label: f64, opts: &PipelineOptions) -> Result<PipelineRun> {
    if !(opts.t0 > 0.0) {
        return Err(Error::domain("reference time must be positive"));
    }
    let drive = LightShiftDrive::from_s0(opts.s0_t0 / opts.t0, opts.omega_over_delta, opts.delta_over_v)?;
    let shifts = drive.shifts(3, 1e-9 * drive.v)?;
    let (field0, probe) = pipeline_fields(s_label, &drive, &shifts, [1.0; 3])?;
    let ladder = h_twisted_ladder(&field0, &probe, &shifts, opts.sigma_floor)?;
    let sigma_abs = ladder.sigmas.map(|z| z.norm());

    let total_time = 9.0 * opts.t0 / (sigma_abs[0] * sigma_abs[0]);
    let prep_time = total_time / 4.0;
    let conversion_time = total_time - prep_time;
    let prep_rabi = PI / (2.0 * 3f64.sqrt() * prep_time) * 3.0 / sigma_abs[0];
    let areas = reference_pulse_areas();
    let conversion_rabis = [0, 1, 2].map(|a| areas[a] / conversion_time * 3.0 / sigma_abs[a]);

    let (_, prep_fields) = pipeline_fields(s_label, &drive, &shifts, [prep_rabi, 0.0, 0.0])?;
    let (_, conv_fields) = pipeline_fields(s_label, &drive, &shifts, conversion_rabis)?;
    let off = h_off_resonant(3, &field0, &shifts)?;
    let residuals = residual_check(&off, &conv_fields, total_time, opts.residual_threshold)?;
    if !residuals.pass {
        return Err(Error::config(
            "pipeline",
            format!(
                "residual check failed: min|ω_R| T = {:.3} (threshold {})",
                residuals.product, residuals.threshold
            ),
        ));
    }

    let model = h_full_driven(
        &conv_fields,
        &PotentialTable::uniform(3, drive.v),
        Frame::LightShifted {
            off_resonant: off.clone(),
            v: drive.v,
        },
    )?;
    let to_c = |x: [f64; 3]| x.iter().map(|&r| C64::new(r, 0.0)).collect::<Vec<_>>();
    let schedule = PulseSchedule::constant(prep_time, to_c([prep_rabi, 0.0, 0.0]))?
        .then(conversion_time, to_c(conversion_rabis))?;

    let prep_ladder = h_twisted_ladder(&field0, &prep_fields, &shifts, opts.sigma_floor)?;
    let conv_ladder = h_twisted_ladder(&field0, &conv_fields, &shifts, opts.sigma_floor)?;
    let ghz_phase = ladder_phase(&prep_ladder, prep_time, &conv_ladder, conversion_time)?;
    let energies: Vec<f64> = (0..8).map(|c| off.matrix()[(c, c)].re).collect();
    let targets = vec![
        NamedTarget::new(
            "ghz_k0",
            Target::Rotating {
                base: conv_ladder.ghz(ghz_phase)?,
                energies,
            },
        ),
        NamedTarget::fixed("D1(k0)", conv_ladder.basis[1].clone()),
    ];
    let psi0 = StateVector::ground(3)?;
    let result = evolve_pure(&model, &schedule, &psi0, &opts.control, &targets)?;
    Ok(PipelineRun {
        s_label,
        shifts,
        drive,
        sigma_abs,
        prep_time,
        conversion_time,
        total_time,
        prep_rabi,
        conversion_rabis,
        pulse_energy: schedule.energy_until(total_time),
        residuals,
        ghz_phase,
        result,
    })
}

fn ladder_phase(prep: &TwistedLadder, t_prep: f64, conv: &TwistedLadder, t_conv: f64) -> Result<f64> {
    let u = unitary_propagator(conv.matrix.matrix(), t_conv)
        * unitary_propagator(prep.matrix.matrix(), t_prep);
    let psi = u * StateVector::ground(3)?.amplitudes();
    let g = conv.basis[0].amplitudes().dotc(&psi);
    let r = conv.basis[3].amplitudes().dotc(&psi);
    if g.norm() < 1e-9 || r.norm() < 1e-9 {
        return Err(Error::Singularity("twisted ladder does not reach a GHZ superposition".into()));
    }
    Ok((r / g).arg())
}
