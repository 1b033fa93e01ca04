// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Twisted-ladder construction for the trimer: fine detunings that cancel the
//! light shifts of the strong field, the resulting ladder over `k₀`-twisted
//! Dicke states, and the brute-force time-averaged oracle it is checked against.

use super::effective::{h_off_resonant, EnergyShifts};
use super::{rung_raising, LaserField};
use crate::error::{Error, Result};
use crate::geometry::sigma_overlap;
use crate::linalg::{cis, expm, hermitian_eigen, CMatrix, C64, I};
use crate::states::{build_twisted_dicke, codes_with_excitation, dim, OperatorMatrix, StateVector};

pub const DEFAULT_SIGMA_FLOOR: f64 = 0.1;

/// `(δ₁, δ₂, δ₃) = (−6s₀+4s₁, 3s₀−8s₁+3s₂, 4s₁−6s₂)`
pub fn fine_detunings(shifts: &EnergyShifts) -> [f64; 3] {
    let (s0, s1, s2) = (shifts.s0(), shifts.s1(), shifts.s2());
    [
        -6.0 * s0 + 4.0 * s1,
        3.0 * s0 - 8.0 * s1 + 3.0 * s2,
        4.0 * s1 - 6.0 * s2,
    ]
}

/// Oscillation frequencies of the five uncompensated ladder terms for
/// arbitrary fine detunings, in the order
/// `(ggg,⊥₁)`, `(⊥₁,⊥₂)`, `(D₁,⊥₂)`, `(⊥₁,D₂)`, `(⊥₂,rrr)`.
pub fn residual_frequencies(shifts: &EnergyShifts, detunings: [f64; 3]) -> Vec<f64> {
    let (s0, s1, s2) = (shifts.s0(), shifts.s1(), shifts.s2());
    let [d1, d2, d3] = detunings;
    vec![
        -3.0 * s0 + s1 - d1,
        -2.0 * s1 - d2,
        3.0 * s0 - 5.0 * s1 - d2,
        -5.0 * s1 + 3.0 * s2 - d2,
        s1 - 3.0 * s2 - d3,
    ]
}

/// The same five frequencies once the fine detunings cancel the light shifts.
pub fn residual_frequencies_compensated(shifts: &EnergyShifts) -> Vec<f64> {
    let (s0, s1, s2) = (shifts.s0(), shifts.s1(), shifts.s2());
    vec![
        3.0 * s0 - 3.0 * s1,
        -3.0 * s0 + 6.0 * s1 - 3.0 * s2,
        3.0 * s1 - 3.0 * s2,
        -3.0 * s0 + 3.0 * s1,
        -3.0 * s1 + 3.0 * s2,
    ]
}

/// The twisted ladder together with its rephased basis.
#[derive(Debug, Clone)]
pub struct TwistedLadder {
    pub matrix: OperatorMatrix,
    /// `√3|Ω₁||Σ₀₁|/3`, `2|Ω₂||Σ₀₂|/3`, `√3|Ω₃||Σ₀₃|/3`
    pub couplings: [f64; 3],
    /// `Σ₀ₐ = Σ_n e^{i(k₀−k_a)·x_n}`
    pub sigmas: [C64; 3],
    /// `|g̃gg⟩, |D₁(k₀)⟩, |D̃₂(k₀)⟩, |r̃rr⟩`
    pub basis: [StateVector; 4],
}

impl TwistedLadder {
    /// Relative phase of `|r̃rr⟩` in the `|g̃gg⟩` frame.
    pub fn ghz(&self, relative_phase: f64) -> Result<StateVector> {
        let amps = self.basis[0].amplitudes() + self.basis[3].amplitudes() * cis(relative_phase);
        StateVector::from_amplitudes(3, amps)
    }
}

/// Ladder `ggg ↔ D₁(k₀) ↔ D₂(k₀) ↔ rrr` with couplings reduced by the overlap
/// sums `Σ₀ₐ`. The coupling phases are absorbed into the basis vectors so that
/// each rung reads `Ω_a* c_a` with real `c_a ≥ 0`.
pub fn h_twisted_ladder(
    field0: &LaserField,
    fields: &[LaserField],
    shifts: &EnergyShifts,
    sigma_floor: f64,
) -> Result<TwistedLadder> {
    if fields.len() != 3 || field0.site_phases.len() != 3 {
        return Err(Error::domain("the twisted ladder needs a trimer and three fields"));
    }
    let expected = fine_detunings(shifts);
    for (j, f) in fields.iter().enumerate() {
        let tol = 1e-9 * expected[j].abs().max(1.0);
        if (f.fine_detuning - expected[j]).abs() > tol {
            return Err(Error::config(
                format!("fields[{j}].fine_detuning"),
                format!(
                    "fine detuning {} does not compensate the light shift ({})",
                    f.fine_detuning, expected[j]
                ),
            ));
        }
    }
    let phases0 = &field0.site_phases;
    let mut sigmas = [C64::new(0.0, 0.0); 3];
    for (j, f) in fields.iter().enumerate() {
        sigmas[j] = sigma_overlap(&f.site_phases, phases0)?;
        if sigmas[j].norm() < sigma_floor {
            return Err(Error::OrthogonalDrive {
                field: f.label,
                overlap: sigmas[j].norm(),
                floor: sigma_floor,
            });
        }
    }
    let phase_sum: f64 = phases0.iter().sum();
    let arg = |z: C64| z.arg();
    let alpha_ggg = arg(sigmas[0]);
    let alpha_d2 = -arg(sigmas[1]);
    let alpha_rrr = phase_sum - arg(sigmas[1]) - arg(sigmas[2]);

    let ggg = build_twisted_dicke(3, 0, phases0)?;
    let d1 = build_twisted_dicke(3, 1, phases0)?;
    let d2 = build_twisted_dicke(3, 2, phases0)?;
    let rrr = build_twisted_dicke(3, 3, &[0.0; 3])?;
    let rephase = |v: &StateVector, a: f64| StateVector::from_amplitudes(3, v.amplitudes() * cis(a));
    let basis = [
        rephase(&ggg, alpha_ggg)?,
        d1,
        rephase(&d2, alpha_d2)?,
        rephase(&rrr, alpha_rrr)?,
    ];
    let r3 = 3f64.sqrt();
    let couplings = [
        r3 * sigmas[0].norm() / 3.0,
        2.0 * sigmas[1].norm() / 3.0,
        r3 * sigmas[2].norm() / 3.0,
    ];
    let mut m = CMatrix::zeros(8, 8);
    for a in 0..3 {
        let lower = basis[a].amplitudes();
        let upper = basis[a + 1].amplitudes();
        let term = lower * upper.adjoint() * (fields[a].rabi.conj() * couplings[a]);
        m += &term + term.adjoint();
    }
    let scaled = [
        couplings[0] * fields[0].rabi.norm(),
        couplings[1] * fields[1].rabi.norm(),
        couplings[2] * fields[2].rabi.norm(),
    ];
    Ok(TwistedLadder {
        matrix: OperatorMatrix::new(3, m)?,
        couplings: scaled,
        sigmas,
        basis,
    })
}

/// One block `⟨lower eigenspace| X_a |upper eigenspace⟩` of a rung lowering
/// operator in the eigenbasis of the light shift.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTerm {
    pub field: usize,
    pub lower_energy: f64,
    pub upper_energy: f64,
    /// `E_upper − E_lower − δ_a`
    pub frequency: f64,
    /// Frobenius norm of the block times `|Ω_a|`.
    pub amplitude: f64,
}

fn sector_eigenspaces(off: &CMatrix, n_atoms: usize, a: usize, tol: f64) -> Vec<(f64, CMatrix)> {
    let codes = codes_with_excitation(n_atoms, a);
    let k = codes.len();
    let sub = CMatrix::from_fn(k, k, |i, j| off[(codes[i], codes[j])]);
    let (vals, vecs) = hermitian_eigen(&sub);
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, &e) in vals.iter().enumerate() {
        match groups.last_mut() {
            Some((e0, members)) if (e - *e0).abs() <= tol => members.push(i),
            _ => groups.push((e, vec![i])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let mean = members.iter().map(|&i| vals[i]).sum::<f64>() / members.len() as f64;
            let mut basis = CMatrix::zeros(dim(n_atoms), members.len());
            for (col, &i) in members.iter().enumerate() {
                for (row, &c) in codes.iter().enumerate() {
                    basis[(c, col)] = vecs[(row, i)];
                }
            }
            (mean, basis)
        })
        .collect()
}

/// Every nonvanishing rung block of the drives in the light-shift eigenbasis
/// with its oscillation frequency. Blocks with `|frequency|` near zero are the
/// compensated ladder; the rest are residual terms.
pub fn drive_spectrum(off: &OperatorMatrix, fields: &[LaserField]) -> Result<Vec<SpectralTerm>> {
    let n_atoms = off.n_atoms();
    if fields.len() > n_atoms {
        return Err(Error::domain("more fields than rungs"));
    }
    let scale = crate::linalg::max_abs(off.matrix()).max(1e-300);
    let tol = 1e-9 * scale;
    let mut out = Vec::new();
    for (j, f) in fields.iter().enumerate() {
        let a = j + 1;
        let lowering = rung_raising(n_atoms, a, &f.site_phases)?.adjoint();
        let lower = sector_eigenspaces(off.matrix(), n_atoms, a - 1, tol);
        let upper = sector_eigenspaces(off.matrix(), n_atoms, a, tol);
        for (el, bl) in &lower {
            for (eu, bu) in &upper {
                let block = bl.adjoint() * &lowering * bu;
                let amp = block.norm() * f.rabi.norm();
                if amp > 1e-12 * f.rabi.norm().max(1e-300) {
                    out.push(SpectralTerm {
                        field: f.label,
                        lower_energy: *el,
                        upper_energy: *eu,
                        frequency: eu - el - f.fine_detuning,
                        amplitude: amp,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Time average of `e^{iH_off t} H^L(t) e^{−iH_off t}` over `t_grid`
/// (trapezoid rule), with `H^L(t) = Σ_a Ω_a* e^{iδ_a t} X_a + h.c.` and field
/// `a` acting on rung `a`.
pub fn rotated_ladder_oracle(
    field0: &LaserField,
    fields: &[LaserField],
    shifts: &EnergyShifts,
    t_grid: &[f64],
) -> Result<OperatorMatrix> {
    let n_atoms = field0.site_phases.len();
    if t_grid.len() < 2 {
        return Err(Error::domain("oracle grid needs at least two points"));
    }
    let window = t_grid[t_grid.len() - 1] - t_grid[0];
    if !(window > 0.0) || t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("oracle grid must be strictly increasing"));
    }
    let off = h_off_resonant(n_atoms, field0, shifts)?;
    let lowerings = fields
        .iter()
        .enumerate()
        .map(|(j, f)| Ok(rung_raising(n_atoms, j + 1, &f.site_phases)?.adjoint()))
        .collect::<Result<Vec<_>>>()?;
    let d = dim(n_atoms);
    let integrand = |t: f64| -> CMatrix {
        let mut hl = CMatrix::zeros(d, d);
        for (f, x) in fields.iter().zip(&lowerings) {
            let term = x * (f.rabi.conj() * cis(f.fine_detuning * t));
            hl += &term + term.adjoint();
        }
        let u = expm(&(off.matrix() * (I * t)));
        &u * hl * u.adjoint()
    };
    let mut acc = CMatrix::zeros(d, d);
    let mut prev = integrand(t_grid[0]);
    for w in t_grid.windows(2) {
        let next = integrand(w[1]);
        acc += (&prev + &next) * C64::new(0.5 * (w[1] - w[0]), 0.0);
        prev = next;
    }
    OperatorMatrix::new(n_atoms, acc / C64::new(window, 0.0))
}
