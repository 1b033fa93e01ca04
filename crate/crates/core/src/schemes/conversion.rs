// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! `|W₃⟩ → |GHZ₃⟩` through the ζ₂₀, ζ₂₋ or ζ₂₊ intermediate.

use crate::dynamics::{
    evolve_lindblad, evolve_pure, NamedTarget, NoiseModel, PulseSchedule, RunResult, StepControl,
    Target,
};
use crate::error::{Error, Result};
use crate::geometry::PotentialTable;
use crate::hamiltonians::{h_full_driven, zeta_ladder_model, Frame, LaserField, ZetaAlignment};
use crate::linalg::{unitary_propagator, C64};
use crate::states::{build_ghz, zeta_state, Chirality, StateVector};

/// `T₀ Ω_a` of the reference ζ₂₀ pulse.
pub fn reference_pulse_areas() -> [f64; 3] {
    let r3 = 3f64.sqrt();
    [1.22 / r3, 1.42 / 2.0, 2.35 / r3]
}

/// Rabi values and duration for `pathway` given the reference time `t0`.
///
/// The chiral pathways double `Ω₂` and then rescale every field by a common
/// factor so the pulse energy `T Σ|Ω_a|²` equals that of the ζ₂₀ pulse.
pub fn pathway_pulse(pathway: ZetaAlignment, t0: f64) -> Result<(Vec<C64>, f64)> {
    if !(t0 > 0.0) {
        return Err(Error::domain("reference time must be positive"));
    }
    let base = reference_pulse_areas().map(|x| x / t0);
    match pathway {
        ZetaAlignment::Aligned => Ok((base.iter().map(|&x| C64::new(x, 0.0)).collect(), t0)),
        ZetaAlignment::ZetaMinus | ZetaAlignment::ZetaPlus => {
            let doubled = [base[0], 2.0 * base[1], base[2]];
            let e_ref: f64 = base.iter().map(|x| x * x).sum();
            let e_dbl: f64 = doubled.iter().map(|x| x * x).sum();
            let c = e_ref / e_dbl;
            Ok((doubled.iter().map(|&x| C64::new(c * x, 0.0)).collect(), t0 / c))
        }
    }
}

/// Relative phase `arg(c_rrr / c_ggg)` reached by the four-level ladder from
/// ζ₁₀ after `duration`.
pub fn effective_ghz_phase(pathway: ZetaAlignment, rabis: &[C64], duration: f64) -> Result<f64> {
    let model = zeta_ladder_model(rabis, pathway)?;
    let u = unitary_propagator(&model.evaluate(0.0).into_matrix(), duration);
    let psi = u * zeta_state(1, Chirality::Zero)?.amplitudes();
    let (g, r) = (psi[0], psi[7]);
    if g.norm() < 1e-9 || r.norm() < 1e-9 {
        return Err(Error::Singularity(
            "ladder does not reach a GHZ superposition".into(),
        ));
    }
    Ok((r / g).arg())
}

#[derive(Debug, Clone)]
pub struct ConversionOptions {
    pub v_over_hbar: f64,
    /// Reference duration `T₀` of the ζ₂₀ pulse.
    pub t0: f64,
    /// Simulated window in units of the pathway's conversion time.
    pub window: f64,
    pub noise: Option<NoiseModel>,
    pub control: StepControl,
}

impl Default for ConversionOptions {
    fn default() -> Self {
        Self {
            v_over_hbar: 3000.0,
            t0: 1.0,
            window: 1.3,
            noise: None,
            control: StepControl::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConversionRun {
    pub pathway: ZetaAlignment,
    pub rabis: Vec<C64>,
    pub conversion_time: f64,
    /// `∫₀^T Σ|Ω_a|² dt` up to the conversion time.
    pub pulse_energy: f64,
    pub ghz_phase: f64,
    pub fidelity_at_conversion: f64,
    pub result: RunResult,
}

impl ConversionRun {
    pub fn peak(&self) -> (f64, f64) {
        self.result.peak("ghz").expect("ghz target is always recorded")
    }
}

/// Trimer W-to-GHZ conversion from ζ₁₀ in the blockade frame, compared with
/// the co-rotating target `(|ggg⟩ + e^{i(φ₀ − 3Vt)}|rrr⟩)/√2`.
pub fn convert_w_to_ghz(pathway: ZetaAlignment, opts: &ConversionOptions) -> Result<ConversionRun> {
    if !(opts.window >= 1.0) {
        return Err(Error::domain("window must cover the conversion time"));
    }
    let v = opts.v_over_hbar;
    let (rabis, t_conv) = pathway_pulse(pathway, opts.t0)?;
    let fields: Vec<LaserField> = pathway
        .field_phases()
        .iter()
        .zip(&rabis)
        .enumerate()
        .map(|(j, (ph, &om))| {
            LaserField::new(j + 1, om, ph.to_vec()).with_detuning(j as f64 * v, 0.0)
        })
        .collect();
    let potentials = PotentialTable::uniform(3, v);
    let model = h_full_driven(&fields, &potentials, Frame::Rotating)?;

    let mut schedule = PulseSchedule::constant(t_conv, rabis.clone())?;
    if opts.window > 1.0 {
        schedule = schedule.then((opts.window - 1.0) * t_conv, rabis.clone())?;
    }
    let phase = effective_ghz_phase(pathway, &rabis, t_conv)?;
    let targets = vec![
        NamedTarget::new("ghz", Target::rotating(build_ghz(3, phase)?, &potentials)),
        NamedTarget::fixed("zeta20", zeta_state(2, Chirality::Zero)?),
        NamedTarget::fixed("zeta2+", zeta_state(2, Chirality::Plus)?),
        NamedTarget::fixed("zeta2-", zeta_state(2, Chirality::Minus)?),
    ];
    let psi0: StateVector = zeta_state(1, Chirality::Zero)?;
    let result = match &opts.noise {
        Some(noise) => evolve_lindblad(
            &model,
            &schedule,
            &psi0.to_density(),
            noise,
            &opts.control,
            &targets,
        )?,
        _ => evolve_pure(&model, &schedule, &psi0, &opts.control, &targets)?,
    };
    let k = nearest_index(&result.times, t_conv);
    let fidelity_at_conversion = result.fidelities[0][k];
    Ok(ConversionRun {
        pathway,
        pulse_energy: schedule.energy_until(t_conv),
        rabis,
        conversion_time: t_conv,
        ghz_phase: phase,
        fidelity_at_conversion,
        result,
    })
}

pub(crate) fn nearest_index(times: &[f64], t: f64) -> usize {
    times
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}
