// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Check the twisted-ladder Hamiltonian against a brute-force time average of
//! the full rotating-frame drive, and list which residual terms survive.

use rydberg_wghz::hamiltonians::{
    drive_spectrum, h_off_resonant, h_twisted_ladder, residual_frequencies_compensated,
    rotated_ladder_oracle, LightShiftDrive, DEFAULT_SIGMA_FLOOR,
};
use rydberg_wghz::linalg::max_abs;
use rydberg_wghz::schemes::pipeline_fields;

fn main() -> rydberg_wghz::Result<()> {
    let drive = LightShiftDrive::from_s0(-1247.0, -0.03, -0.7)?;
    let shifts = drive.shifts(3, 1.0)?;
    println!("V T = {:.1}, Delta0 T = {:.1}, Omega0 T = {:.1}", drive.v, drive.delta0, drive.omega0);
    let formula: Vec<String> = residual_frequencies_compensated(&shifts).iter().map(|w| format!("{w:.1}")).collect();
    println!("residual frequencies: [{}]", formula.join(", "));

    let grid: Vec<f64> = (0..=20_000).map(|k| k as f64 / 20_000.0).collect();
    for s in [0.0, 0.5, 0.75] {
        let (f0, fields) = pipeline_fields(s, &drive, &shifts, [12.0, 9.0, 15.0])?;
        let ladder = h_twisted_ladder(&f0, &fields, &shifts, DEFAULT_SIGMA_FLOOR)?;
        let avg = rotated_ladder_oracle(&f0, &fields, &shifts, &grid)?;
        let dev = max_abs(&(avg.matrix() - ladder.matrix.matrix())) / max_abs(ladder.matrix.matrix());
        println!(
            "s = {s}: couplings {:.3?}, |Sigma| = {:.3}, oracle deviation {:.3}%",
            ladder.couplings,
            ladder.sigmas[0].norm(),
            100.0 * dev
        );
        let off = h_off_resonant(3, &f0, &shifts)?;
        let driven: Vec<String> = drive_spectrum(&off, &fields)?
            .iter()
            .filter(|t| t.frequency.abs() > 1e-6)
            .map(|t| format!("{}:{:.1}", t.field, t.frequency))
            .collect();
        println!("        driven residuals (field:freq) {}", driven.join(" "));
    }
    Ok(())
}
