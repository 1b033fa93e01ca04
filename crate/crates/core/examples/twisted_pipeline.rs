// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Preparation plus conversion through the twisted Dicke ladder under a strong
//! off-resonant dressing field, for three field alignments at equal energy.

use rydberg_wghz::schemes::{twisted_ladder_pipeline, PipelineOptions};

fn main() -> rydberg_wghz::Result<()> {
    let opts = PipelineOptions::default();
    for s in [0.0, 0.5, 0.75] {
        let run = twisted_ladder_pipeline(s, &opts)?;
        let p = run.result.final_populations();
        println!(
            "s = {s:<4} |Sigma| = {:.3}  T = {:.3} (prep {:.3})  A = {:.4}",
            run.sigma_abs[0], run.total_time, run.prep_time, run.pulse_energy
        );
        println!(
            "         shifts s0,s1,s2 = {:.1}, {:.1}, {:.1}",
            run.shifts.s0(),
            run.shifts.s1(),
            run.shifts.s2()
        );
        println!(
            "         P = [{:.4}, {:.4}, {:.4}, {:.4}]  F(GHZ) = {:.5}  min|w_R| T = {:.0}",
            p[0],
            p[1],
            p[2],
            p[3],
            run.result.final_fidelity("ghz_k0").unwrap_or(f64::NAN),
            run.residuals.product
        );
    }
    match twisted_ladder_pipeline(1.0, &opts) {
        Err(e) => println!("s = 1: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
