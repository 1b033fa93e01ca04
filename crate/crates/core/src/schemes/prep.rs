// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Twisted W preparation by a single tilted π-pulse on the `d = 2λ₀` triangle.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dynamics::{evolve_pure, NamedTarget, PulseSchedule, RunResult, StepControl};
use crate::error::{Error, Result};
use crate::geometry::{site_phases, triangle_array, triangle_site_phases, LaserAlignment, PotentialTable};
use crate::hamiltonians::{h_full_driven, Frame, LaserField};
use crate::linalg::C64;
use crate::states::{build_twisted_dicke, fidelity, zeta_state, Chirality, StateVector};

/// Side length of the preparation triangle in λ₀.
pub const PREP_SIDE: f64 = 2.0;

#[derive(Debug, Clone)]
pub struct PrepRun {
    pub result: RunResult,
    pub alignment: LaserAlignment,
    pub site_phases: Vec<f64>,
    pub rabi: f64,
    pub target: StateVector,
}

/// π-pulse `Ω₁ = π/(2√3 T)` of one resonant field tilted to imprint
/// `(−Φ, 0, +Φ)`, propagated in the blockade frame from `|ggg⟩`.
pub fn prepare_twisted_w(
    phi: f64,
    total_time: f64,
    v_over_hbar: f64,
    control: &StepControl,
) -> Result<PrepRun> {
    if !(total_time > 0.0) {
        return Err(Error::domain("total time must be positive"));
    }
    let alignment = LaserAlignment::for_twist(phi)?;
    let atoms = triangle_array(PREP_SIDE)?;
    let phases = site_phases(&alignment, &atoms);
    let rabi = PI / (2.0 * 3f64.sqrt() * total_time);
    let field = LaserField::new(1, C64::new(rabi, 0.0), phases.clone());
    let model = h_full_driven(
        std::slice::from_ref(&field),
        &PotentialTable::uniform(3, v_over_hbar),
        Frame::Rotating,
    )?;
    let schedule = PulseSchedule::constant(total_time, vec![field.rabi])?;
    let target = build_twisted_dicke(3, 1, &phases)?;
    let targets = vec![
        NamedTarget::fixed("W(Phi)", target.clone()),
        NamedTarget::fixed("zeta10", zeta_state(1, Chirality::Zero)?),
        NamedTarget::fixed("zeta1+", zeta_state(1, Chirality::Plus)?),
        NamedTarget::fixed("zeta1-", zeta_state(1, Chirality::Minus)?),
    ];
    let psi0 = StateVector::ground(3)?;
    let result = evolve_pure(&model, &schedule, &psi0, control, &targets)?;
    Ok(PrepRun {
        result,
        alignment,
        site_phases: phases,
        rabi,
        target,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub theta_k: f64,
    pub phi: f64,
    pub f_zeta10: f64,
    pub f_zeta_plus: f64,
    pub f_zeta_minus: f64,
}

/// Overlaps `|⟨W(Φ)|ζ₁s⟩|` with `Φ = 2π sin θ_k` on the prep triangle.
pub fn prep_fidelity_curve(thetas: &[f64]) -> Result<Vec<CurveRow>> {
    let z0 = zeta_state(1, Chirality::Zero)?;
    let zp = zeta_state(1, Chirality::Plus)?;
    let zm = zeta_state(1, Chirality::Minus)?;
    thetas
        .iter()
        .map(|&theta| {
            if !(0.0..=PI / 2.0).contains(&theta) {
                return Err(Error::domain(format!("θ_k = {theta} outside [0, π/2]")));
            }
            let alignment = LaserAlignment::new(theta, PI / 2.0);
            let phases = triangle_site_phases(&alignment, PREP_SIDE);
            let w = build_twisted_dicke(3, 1, &phases)?;
            Ok(CurveRow {
                theta_k: theta,
                phi: 2.0 * PI * theta.sin(),
                f_zeta10: fidelity(&w, &z0)?,
                f_zeta_plus: fidelity(&w, &zp)?,
                f_zeta_minus: fidelity(&w, &zm)?,
            })
        })
        .collect()
}

/// Uniform grid of `points` angles over `[lo, hi]`.
pub fn theta_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}
