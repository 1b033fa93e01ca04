// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Drive the same code path as `wghz run` / `wghz sweep` from an inline TOML
//! config and print where the CSV and summary files went.
//!
//! ```bash
//! cargo run --example config_run -- /tmp/wghz-demo
//! ```

use std::path::PathBuf;

use rydberg_wghz::cli::{cmd_run, cmd_sweep};
use rydberg_wghz::config::parse_config;

const PREP: &str = r#"
schema_version = 1
name = "demo-prep"
scheme = "chiral_prep"

[geometry]
twist_rad = -2.0943951023931953

[hamiltonian]
v_per_t = 3000.0

[integrator]
record_points = 51
"#;

const CURVE: &str = r#"
schema_version = 1
name = "demo-curve"
scheme = "prep_curve"

[grid]
theta_k_rad = { start = 0.0, stop = 1.5707963267948966, points = 37 }
"#;

fn main() -> rydberg_wghz::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("wghz-demo"));

    let prep = parse_config(PREP, "inline:prep")?;
    let out = cmd_run(&prep, 0, &dir)?;
    for run in &out.summary.runs {
        println!("{} -> {}", run.variant, run.file);
        for (name, f) in &run.final_fidelities {
            println!("  F_{name} = {f:.6}");
        }
    }

    let curve = parse_config(CURVE, "inline:curve")?;
    let out = cmd_sweep(&curve, 0, &dir, None)?;
    for f in &out.files {
        println!("wrote {}", f.display());
    }
    println!("config sha256 {}", out.summary.config_sha256);
    Ok(())
}
