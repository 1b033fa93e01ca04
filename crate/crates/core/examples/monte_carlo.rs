// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Positional disorder: jitter the three atoms with isotropic Gaussian noise
//! and average the ζ₂₀ conversion fidelity. Deterministic for a given seed.
//!
//! ```bash
//! cargo run --release --example monte_carlo -- 200 7
//! ```

use rydberg_wghz::schemes::{positional_monte_carlo, theta_grid, MonteCarloOptions};

fn main() -> rydberg_wghz::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(100);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(20260101);

    let grid = theta_grid(0.0, 0.1, 6);
    let summary = positional_monte_carlo(&grid, samples, seed, &MonteCarloOptions::default())?;
    println!("seed {seed}, {samples} samples per point");
    println!("{:>7} {:>9} {:>9} {:>9} {:>9} {:>9}", "sigma", "mean", "std", "stderr", "sigma_d", "min");
    for r in &summary.rows {
        println!(
            "{:>7.3} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            r.sigma, r.mean, r.std, r.stderr, r.sigma_d, r.min
        );
    }
    println!(
        "worst norm drift {:.1e}, worst halving change {:.1e}",
        summary.max_norm_drift, summary.max_halving_delta
    );
    Ok(())
}
