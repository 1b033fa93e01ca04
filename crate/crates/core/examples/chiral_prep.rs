// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Prepare the chiral W state ζ₁₊ with a single tilted π/2-area pulse and
//! watch the overlap build up.
//!
//! ```bash
//! cargo run --example chiral_prep -- 2.0944 3000
//! ```

use std::f64::consts::PI;

use rydberg_wghz::dynamics::StepControl;
use rydberg_wghz::schemes::prepare_twisted_w;

fn main() -> rydberg_wghz::Result<()> {
    let mut args = std::env::args().skip(1);
    let phi: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2.0 * PI / 3.0);
    let v: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3000.0);

    let run = prepare_twisted_w(phi, 1.0, v, &StepControl::default())?;
    println!(
        "twist {phi:.4} rad -> theta_k = {:.4} rad, Omega_1 T = {:.4}",
        run.alignment.theta_k, run.rabi
    );
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "t/T", "P1", "F(W)", "F(z1+)", "F(z1-)");
    let w = run.result.fidelity_trace("W(Phi)").unwrap();
    let plus = run.result.fidelity_trace("zeta1+").unwrap();
    let minus = run.result.fidelity_trace("zeta1-").unwrap();
    let stride = (run.result.times.len() / 10).max(1);
    for k in (0..run.result.times.len()).step_by(stride) {
        println!(
            "{:>6.3} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            run.result.times[k], run.result.populations[k][1], w[k], plus[k], minus[k]
        );
    }
    let d = run.result.diagnostics;
    println!("norm drift {:.1e}, halving change {:.1e}", d.norm_drift, d.halving_delta);
    Ok(())
}
