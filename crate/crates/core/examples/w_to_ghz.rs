// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Convert |W₃⟩ into a GHZ state along the ζ₂₀ and ζ₂₋ pathways at equal
//! pulse energy and compare when each one peaks.

use rydberg_wghz::hamiltonians::ZetaAlignment;
use rydberg_wghz::schemes::{convert_w_to_ghz, ConversionOptions};

fn main() -> rydberg_wghz::Result<()> {
    let opts = ConversionOptions::default();
    let mut peaks = Vec::new();
    for pathway in [ZetaAlignment::Aligned, ZetaAlignment::ZetaMinus] {
        let run = convert_w_to_ghz(pathway, &opts)?;
        let (tp, fp) = run.peak();
        let rabis: Vec<String> = run.rabis.iter().map(|r| format!("{:.4}", r.re)).collect();
        println!("{pathway}: Omega T0 = [{}]", rabis.join(", "));
        println!(
            "  T_conv = {:.4}, A = {:.6}, GHZ phase = {:+.4}, F(T_conv) = {:.6}, peak {fp:.6} at {tp:.4}",
            run.conversion_time, run.pulse_energy, run.ghz_phase, run.fidelity_at_conversion
        );
        let own = match pathway {
            ZetaAlignment::Aligned => "zeta20",
            ZetaAlignment::ZetaMinus => "zeta2-",
            ZetaAlignment::ZetaPlus => "zeta2+",
        };
        let bypassed = ["zeta20", "zeta2+", "zeta2-"]
            .iter()
            .filter(|n| **n != own)
            .filter_map(|n| run.result.fidelity_trace(n))
            .flat_map(|t| t.iter().copied())
            .fold(0.0, f64::max);
        println!("  largest population on the bypassed zeta2 states: {bypassed:.3e}");
        peaks.push(tp);
    }
    println!("peak-time ratio zeta2-/zeta20 = {:.4}", peaks[1] / peaks[0]);
    Ok(())
}
