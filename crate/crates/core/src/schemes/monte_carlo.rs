// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Robustness of the ζ₂₀ conversion against Gaussian position errors.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{evolve_pure, NamedTarget, PulseSchedule, StepControl, Target};
use crate::error::{Error, Result};
use crate::geometry::{
    perturb, potentials, site_phases, substream, triangle_array, LaserAlignment, PotentialTable,
};
use crate::hamiltonians::{h_full_driven, Frame, LaserField, ZetaAlignment};
use crate::states::{build_ghz, zeta_state, Chirality};

use super::conversion::{effective_ghz_phase, pathway_pulse};

#[derive(Debug, Clone)]
pub struct MonteCarloOptions {
    /// Interaction `V/ħ` of the unperturbed triangle, in 1/T₀.
    pub v_ref: f64,
    /// Triangle side in λ₀.
    pub side: f64,
    pub t0: f64,
    /// Let the perturbed positions also shift the site phases of the
    /// (normally incident) fields.
    pub perturb_phases: bool,
    pub control: StepControl,
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        Self {
            v_ref: 30.86,
            side: 40.0,
            t0: 1.0,
            perturb_phases: false,
            control: StepControl {
                steps_per_period: 120.0,
                record_points: 8,
                ..StepControl::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloRow {
    pub sigma: f64,
    pub samples: usize,
    pub mean: f64,
    pub std: f64,
    /// `std / √S`
    pub stderr: f64,
    /// Spread of all `3S` pair distances.
    pub sigma_d: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub seed: u64,
    pub rows: Vec<MonteCarloRow>,
    /// Worst halving change and drift over every sample.
    pub max_halving_delta: f64,
    pub max_norm_drift: f64,
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    fidelity: f64,
    distances: [f64; 3],
    halving: f64,
    norm: f64,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let x0 = xs[0];
    let shift = xs.iter().map(|x| x - x0).sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - x0 - shift).powi(2)).sum::<f64>() / n;
    (x0 + shift, var.sqrt())
}

/// Per σ, draws `samples` perturbed triangles, recomputes the three `V_pq`
/// and records the GHZ fidelity at `T₀` against the nominal target. Sample
/// `i` of grid point `k` uses substream `(k << 32) | i` of `seed`.
pub fn positional_monte_carlo(
    sigmas: &[f64],
    samples: usize,
    seed: u64,
    opts: &MonteCarloOptions,
) -> Result<MonteCarloSummary> {
    if sigmas.is_empty() {
        return Err(Error::config("grid.sigma", "empty sigma grid"));
    }
    if samples == 0 {
        return Err(Error::config("sampling.samples", "need at least one sample"));
    }
    if let Some(&bad) = sigmas.iter().find(|s| !(**s >= 0.0 && s.is_finite())) {
        return Err(Error::domain(format!("sigma = {bad} must be finite and non-negative")));
    }
    let pathway = ZetaAlignment::Aligned;
    let (rabis, t_conv) = pathway_pulse(pathway, opts.t0)?;
    let nominal = PotentialTable::uniform(3, opts.v_ref);
    let phase = effective_ghz_phase(pathway, &rabis, t_conv)?;
    let targets = vec![NamedTarget::new(
        "ghz",
        Target::rotating(build_ghz(3, phase)?, &nominal),
    )];
    let schedule = PulseSchedule::constant(t_conv, rabis.clone())?;
    let psi0 = zeta_state(1, Chirality::Zero)?;
    let base = triangle_array(opts.side)?;
    let normal = LaserAlignment::normal();

    let run_sample = |k: usize, i: usize| -> Result<Sample> {
        let mut rng = substream(seed, ((k as u64) << 32) | i as u64);
        let atoms = perturb(&base, sigmas[k], &mut rng)?;
        let table = potentials(&atoms, opts.v_ref, opts.side)?;
        let phases = if opts.perturb_phases {
            site_phases(&normal, &atoms)
        } else {
            vec![0.0; 3]
        };
        let fields: Vec<LaserField> = rabis
            .iter()
            .enumerate()
            .map(|(j, &om)| {
                LaserField::new(j + 1, om, phases.clone()).with_detuning(j as f64 * opts.v_ref, 0.0)
            })
            .collect();
        let model = h_full_driven(&fields, &table, Frame::Rotating)?;
        let run = evolve_pure(&model, &schedule, &psi0, &opts.control, &targets)?;
        let d = atoms.pair_distances();
        Ok(Sample {
            fidelity: run.final_fidelity("ghz").unwrap_or(0.0),
            distances: [d[0].2, d[1].2, d[2].2],
            halving: run.diagnostics.halving_delta,
            norm: run.diagnostics.norm_drift,
        })
    };

    let mut rows = Vec::with_capacity(sigmas.len());
    let (mut max_halving, mut max_norm) = (0.0f64, 0.0f64);
    for (k, &sigma) in sigmas.iter().enumerate() {
        let drawn: Vec<Sample> = (0..samples)
            .into_par_iter()
            .map(|i| run_sample(k, i))
            .collect::<Result<_>>()?;
        let fids: Vec<f64> = drawn.iter().map(|s| s.fidelity).collect();
        let dists: Vec<f64> = drawn.iter().flat_map(|s| s.distances).collect();
        let (mean, std) = mean_std(&fids);
        let (_, sigma_d) = mean_std(&dists);
        for s in &drawn {
            max_halving = max_halving.max(s.halving);
            max_norm = max_norm.max(s.norm);
        }
        rows.push(MonteCarloRow {
            sigma,
            samples,
            mean,
            std,
            stderr: std / (samples as f64).sqrt(),
            sigma_d,
            min: fids.iter().copied().fold(f64::INFINITY, f64::min),
            max: fids.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        });
    }
    Ok(MonteCarloSummary {
        seed,
        rows,
        max_halving_delta: max_halving,
        max_norm_drift: max_norm,
    })
}
