// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Timescale chain `κ/n³ ≪ 1/T_int ≲ |g| ≪ |G| ≪ E_I/(ħn³)` in SI rates.

use serde::Serialize;

/// All rates in s⁻¹, times in s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyParams {
    pub principal_n: u32,
    pub kappa: f64,
    pub rabi: f64,
    pub stark_shift: f64,
    pub ionization_rate: f64,
    /// Defaults to `1/|g|`, the shortest admissible pulse.
    pub pulse_duration: Option<f64>,
    /// Factor that "≪" demands.
    pub margin: f64,
}

impl HierarchyParams {
    pub fn new(principal_n: u32, rabi: f64, stark_shift: f64) -> Self {
        Self {
            principal_n,
            kappa: 1e9,
            rabi,
            stark_shift,
            ionization_rate: 1e16,
            pulse_duration: None,
            margin: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HierarchyLink {
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs / lhs`
    pub ratio: f64,
    pub required: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HierarchyReport {
    pub decay_rate: f64,
    pub level_spacing: f64,
    pub pulse_duration: f64,
    /// Admissible pulse window `[1/|g|, n³/κ]`.
    pub pulse_window: (f64, f64),
    pub links: Vec<HierarchyLink>,
    pub pass: bool,
}

fn link(relation: &str, lhs: f64, rhs: f64, required: f64) -> HierarchyLink {
    let ratio = rhs / lhs;
    HierarchyLink {
        relation: relation.to_string(),
        lhs,
        rhs,
        ratio,
        required,
        pass: ratio.is_finite() && ratio >= required * (1.0 - 1e-12),
    }
}

pub fn hierarchy_check(p: &HierarchyParams) -> HierarchyReport {
    let n3 = f64::from(p.principal_n).powi(3);
    let decay_rate = p.kappa / n3;
    let level_spacing = p.ionization_rate / n3;
    let g = p.rabi.abs();
    let big_g = p.stark_shift.abs();
    let t_int = p.pulse_duration.unwrap_or(1.0 / g);
    let links = vec![
        link("kappa/n^3 << 1/T_int", decay_rate, 1.0 / t_int, p.margin),
        link("1/T_int <~ |g|", 1.0 / t_int, g, 1.0),
        link("|g| << |G|", g, big_g, p.margin),
        link("|G| << E_I/(hbar n^3)", big_g, level_spacing, p.margin),
    ];
    let pass = links.iter().all(|l| l.pass);
    HierarchyReport {
        decay_rate,
        level_spacing,
        pulse_duration: t_int,
        pulse_window: (1.0 / g, 1.0 / decay_rate),
        links,
        pass,
    }
}
