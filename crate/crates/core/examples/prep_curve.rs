// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Overlap of the prepared twisted W state with ζ₁₀ and ζ₁± as the field is
//! tilted away from normal incidence.

use rydberg_wghz::schemes::{prep_fidelity_curve, theta_grid};

fn main() -> rydberg_wghz::Result<()> {
    let grid = theta_grid(0.0, std::f64::consts::FRAC_PI_2, 19);
    println!("{:>8} {:>8} {:>9} {:>9} {:>9}", "theta_k", "Phi", "zeta10", "zeta1+", "zeta1-");
    for r in prep_fidelity_curve(&grid)? {
        println!(
            "{:>8.4} {:>8.4} {:>9.5} {:>9.5} {:>9.5}",
            r.theta_k, r.phi, r.f_zeta10, r.f_zeta_plus, r.f_zeta_minus
        );
    }
    // exact peaks
    for (label, theta) in [("zeta1+", (1.0f64 / 3.0).asin()), ("zeta1-", (2.0f64 / 3.0).asin())] {
        let r = prep_fidelity_curve(&[theta])?[0];
        println!("{label} peak at theta_k = {theta:.6}: {:.12} {:.12}", r.f_zeta_plus, r.f_zeta_minus);
    }
    Ok(())
}
