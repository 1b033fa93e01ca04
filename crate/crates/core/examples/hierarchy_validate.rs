// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Timescale hierarchy for a given Rydberg level, then the same check the
//! `wghz validate` command runs on a config file.

use rydberg_wghz::cli::cmd_validate;
use rydberg_wghz::config::load_config;
use rydberg_wghz::hamiltonians::{hierarchy_check, HierarchyParams};

fn main() -> rydberg_wghz::Result<()> {
    let params = HierarchyParams::new(50, 8.0e5, 8.0e7);
    let report = hierarchy_check(&params);
    println!(
        "n = {}: decay {:.3e}/s, level spacing {:.3e}/s, pulse {:.3e} s",
        params.principal_n, report.decay_rate, report.level_spacing, report.pulse_duration
    );
    for link in &report.links {
        println!(
            "  {:<28} ratio {:>10.3e} (need {:>6.1}) {}",
            link.relation,
            link.ratio,
            link.required,
            if link.pass { "ok" } else { "VIOLATED" }
        );
    }

    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/configs/fig7_twisted_pipeline.toml").to_string()
    });
    let loaded = load_config(path.as_ref())?;
    println!("\n{}", cmd_validate(&loaded)?);
    Ok(())
}
