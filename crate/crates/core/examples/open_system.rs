// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Same conversion with collective decay and dephasing jumps.
//! The slower pathway loses more.
//!
//! ```bash
//! cargo run --release --example open_system -- 0.1 0.1
//! ```

use rydberg_wghz::dynamics::NoiseModel;
use rydberg_wghz::hamiltonians::ZetaAlignment;
use rydberg_wghz::schemes::{convert_w_to_ghz, ConversionOptions};

fn main() -> rydberg_wghz::Result<()> {
    let mut args = std::env::args().skip(1);
    let gamma: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.1);
    let dephase: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.1);
    let noise = NoiseModel::new(gamma, dephase)?;

    for pathway in [ZetaAlignment::Aligned, ZetaAlignment::ZetaMinus] {
        let closed = convert_w_to_ghz(pathway, &ConversionOptions { window: 1.0, ..Default::default() })?;
        let open = convert_w_to_ghz(
            pathway,
            &ConversionOptions { window: 1.0, noise: Some(noise), ..Default::default() },
        )?;
        let d = open.result.diagnostics;
        println!(
            "{pathway:>11}: T = {:.4}  unitary {:.6}  lindblad {:.6}  (trace drift {:.1e}, min eig {:.1e})",
            open.conversion_time,
            closed.fidelity_at_conversion,
            open.fidelity_at_conversion,
            d.trace_drift,
            d.min_eigenvalue
        );
    }
    Ok(())
}
