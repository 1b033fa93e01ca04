// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Named experiments: chiral W preparation, the W-to-GHZ pathways, the
//! twisted-ladder pipeline and the positional Monte Carlo study.

mod conversion;
mod monte_carlo;
mod pipeline;
mod prep;

pub use conversion::{
    convert_w_to_ghz, effective_ghz_phase, pathway_pulse, reference_pulse_areas,
    ConversionOptions, ConversionRun,
};
pub use monte_carlo::{positional_monte_carlo, MonteCarloOptions, MonteCarloRow, MonteCarloSummary};
pub use pipeline::{
    pipeline_fields, residual_check, twisted_ladder_pipeline, PipelineOptions, PipelineRun,
    ResidualReport,
};
pub use prep::{prep_fidelity_curve, prepare_twisted_w, theta_grid, CurveRow, PrepRun, PREP_SIDE};
