// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Effective Hamiltonians in the blockade regime `V ≫ |Ω|`.

use std::f64::consts::PI;
use std::str::FromStr;

use super::{chain_model, check_fields, rung_raising, HamiltonianModel, LaserField, ModelKind};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::states::{
    self, build_dicke, build_twisted_dicke, check_atoms, dim, excitation_projector, zeta_state,
    Chirality, OperatorMatrix, StateVector,
};

/// Light shifts `s_a = |Ω₀|²/(Δ₀ − aV)` for `a = 0 … N−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyShifts {
    s: Vec<f64>,
}

impl EnergyShifts {
    pub fn new(s: Vec<f64>) -> Self {
        Self { s }
    }

    pub fn trimer(s0: f64, s1: f64, s2: f64) -> Self {
        Self { s: vec![s0, s1, s2] }
    }

    /// Fails when some `|Δ₀ − aV|` drops below `floor`.
    pub fn from_drive(n_atoms: usize, omega0: C64, delta0: f64, v: f64, floor: f64) -> Result<Self> {
        check_atoms(n_atoms)?;
        if omega0.norm() > 0.0 && delta0.abs() < 10.0 * omega0.norm() {
            log::warn!(
                "off-resonant drive is only weakly detuned: |Δ₀|/|Ω₀| = {:.3}",
                delta0.abs() / omega0.norm()
            );
        }
        let s = (0..n_atoms)
            .map(|a| {
                let den = delta0 - a as f64 * v;
                if den.abs() <= floor {
                    Err(Error::Singularity(format!(
                        "Δ₀ − {a}V = {den:.3e} is below the floor {floor:.3e}"
                    )))
                } else {
                    Ok(omega0.norm_sqr() / den)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { s })
    }

    /// `s_a`, zero outside `0 … N−1`.
    pub fn get(&self, a: isize) -> f64 {
        if a < 0 {
            0.0
        } else {
            self.s.get(a as usize).copied().unwrap_or(0.0)
        }
    }

    pub fn s0(&self) -> f64 {
        self.get(0)
    }

    pub fn s1(&self) -> f64 {
        self.get(1)
    }

    pub fn s2(&self) -> f64 {
        self.get(2)
    }

    pub fn values(&self) -> &[f64] {
        &self.s
    }
}

/// Strong off-resonant drive `(Ω₀, Δ₀)` together with the blockade shift `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightShiftDrive {
    pub omega0: f64,
    pub delta0: f64,
    pub v: f64,
}

impl LightShiftDrive {
    /// Picks `V` so that `s₀` takes the requested value for the ratios
    /// `Ω₀ = r_Ω Δ₀` and `Δ₀ = r_Δ V`.
    pub fn from_s0(s0: f64, omega_over_delta: f64, delta_over_v: f64) -> Result<Self> {
        let denom = omega_over_delta * omega_over_delta * delta_over_v;
        if denom == 0.0 || s0 == 0.0 {
            return Err(Error::domain("ratios and s0 must be nonzero"));
        }
        let v = s0 / denom;
        if !(v > 0.0) {
            return Err(Error::domain(format!(
                "s0 = {s0} with these ratios implies a non-positive V = {v}"
            )));
        }
        let delta0 = delta_over_v * v;
        Ok(Self {
            omega0: omega_over_delta * delta0,
            delta0,
            v,
        })
    }

    pub fn shifts(&self, n_atoms: usize, floor: f64) -> Result<EnergyShifts> {
        EnergyShifts::from_drive(n_atoms, C64::new(self.omega0, 0.0), self.delta0, self.v, floor)
    }
}

/// General-N light-shift correction built from `U Hd₂ U†` per excitation
/// sector.
pub fn h_off_resonant(
    n_atoms: usize,
    field0: &LaserField,
    shifts: &EnergyShifts,
) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    check_fields(std::slice::from_ref(field0), n_atoms)?;
    let d = dim(n_atoms);
    if field0.rabi.norm() == 0.0 {
        return OperatorMatrix::new(n_atoms, CMatrix::zeros(d, d));
    }
    let u = states::twist_unitary(&field0.site_phases)?;
    let hd = states::hd2_operator(n_atoms)?.conjugated_by(&u);
    let id = CMatrix::identity(d, d);
    let mut acc = CMatrix::zeros(d, d);
    for a in 0..=n_atoms {
        let p = excitation_projector(n_atoms, a)?;
        let s_here = shifts.get(a as isize);
        let s_below = shifts.get(a as isize - 1);
        let up = (hd.matrix() + &id * C64::new((n_atoms - a) as f64, 0.0)) * C64::new(s_here, 0.0);
        let down = (hd.matrix() + &id * C64::new(a as f64, 0.0)) * C64::new(s_below, 0.0);
        acc += p.matrix() * (up - down) * p.matrix();
    }
    OperatorMatrix::new(n_atoms, acc)
}

/// Explicit trimer form:
/// `3s₀|ggg⟩⟨ggg| − 3s₂|rrr⟩⟨rrr| + 3(s₁−s₀)|D₁⟩⟨D₁| + 3(s₂−s₁)|D₂⟩⟨D₂| + s₁(P₁ − P₂)`
/// with twisted Dicke states of the reference field.
pub fn h_off_resonant_trimer(phases0: &[f64], shifts: &EnergyShifts) -> Result<OperatorMatrix> {
    if phases0.len() != 3 {
        return Err(Error::domain("the explicit trimer form needs three site phases"));
    }
    let (s0, s1, s2) = (shifts.s0(), shifts.s1(), shifts.s2());
    let proj = |v: &StateVector| v.amplitudes() * v.amplitudes().adjoint();
    let d1 = build_twisted_dicke(3, 1, phases0)?;
    let d2 = build_twisted_dicke(3, 2, phases0)?;
    let mut m = CMatrix::zeros(8, 8);
    m[(0, 0)] += C64::new(3.0 * s0, 0.0);
    m[(7, 7)] += C64::new(-3.0 * s2, 0.0);
    m += proj(&d1) * C64::new(3.0 * (s1 - s0), 0.0);
    m += proj(&d2) * C64::new(3.0 * (s2 - s1), 0.0);
    m += (excitation_projector(3, 1)?.matrix() - excitation_projector(3, 2)?.matrix())
        * C64::new(s1, 0.0);
    OperatorMatrix::new(3, m)
}

fn check_resonance(a: usize, field: &LaserField, v: f64, tol: f64) -> Result<()> {
    let expected = (a as f64 - 1.0) * v;
    if (field.coarse_detuning - expected).abs() > tol {
        return Err(Error::config(
            format!("field[{}].coarse_detuning", field.label),
            format!(
                "rung {a} needs Δ = {expected}, got {} (tolerance {tol:.1e})",
                field.coarse_detuning
            ),
        ));
    }
    Ok(())
}

/// Default resonance tolerance relative to `max(|V|, 1)`.
pub const RESONANCE_TOLERANCE: f64 = 1e-9;

/// `Ω* U σ_a^− U† + h.c.` for a field resonant with rung `a`.
pub fn h_resonant_step(n_atoms: usize, a: usize, field: &LaserField, v: f64) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    check_fields(std::slice::from_ref(field), n_atoms)?;
    check_resonance(a, field, v, RESONANCE_TOLERANCE * v.abs().max(1.0))?;
    let r = rung_raising(n_atoms, a, &field.site_phases)? * field.rabi;
    OperatorMatrix::new(n_atoms, &r + r.adjoint())
}

/// Sum of resonant steps, field `a` on rung `a`.
pub fn h_ladder(n_atoms: usize, fields: &[LaserField], v: f64) -> Result<OperatorMatrix> {
    if fields.len() != n_atoms {
        return Err(Error::domain("the ladder needs one field per rung"));
    }
    let mut acc = OperatorMatrix::zero(n_atoms)?;
    for (j, f) in fields.iter().enumerate() {
        acc = acc.plus(&h_resonant_step(n_atoms, j + 1, f, v)?);
    }
    Ok(acc)
}

/// Ladder coefficient `√(a(N−a+1))`.
pub fn dicke_coefficient(n_atoms: usize, a: usize) -> f64 {
    ((a * (n_atoms + 1 - a)) as f64).sqrt()
}

/// `(N+1)`-level Dicke ladder as a drive model.
pub fn dicke_ladder_model(n_atoms: usize, rabis: &[C64]) -> Result<HamiltonianModel> {
    check_atoms(n_atoms)?;
    if rabis.len() != n_atoms {
        return Err(Error::domain("the Dicke ladder needs N Rabi values"));
    }
    let chain = (0..=n_atoms)
        .map(|a| build_dicke(n_atoms, a))
        .collect::<Result<Vec<_>>>()?;
    let coeffs: Vec<C64> = (1..=n_atoms)
        .map(|a| C64::new(dicke_coefficient(n_atoms, a), 0.0))
        .collect();
    chain_model(ModelKind::DickeLadder, &chain, &coeffs, rabis)
}

/// `Σ_a √(a(N−a+1)) (Ω_a |D_a⟩⟨D_{a−1}| + h.c.)`
pub fn h_dicke_ladder(n_atoms: usize, rabis: &[C64]) -> Result<OperatorMatrix> {
    Ok(dicke_ladder_model(n_atoms, rabis)?.evaluate(0.0))
}

/// Field alignment selecting the `a = 2` rung of the trimer ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZetaAlignment {
    Aligned,
    ZetaMinus,
    ZetaPlus,
}

impl FromStr for ZetaAlignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "aligned" | "zeta20" => Ok(Self::Aligned),
            "zeta_minus" | "zeta2minus" => Ok(Self::ZetaMinus),
            "zeta_plus" | "zeta2plus" => Ok(Self::ZetaPlus),
            other => Err(Error::config(
                "alignment",
                format!("unknown alignment case `{other}`"),
            )),
        }
    }
}

impl std::fmt::Display for ZetaAlignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl ZetaAlignment {
    /// Site phases of fields 1, 2, 3 on the trimer. The ζ₂∓ cases tilt
    /// fields 2 and 3 by opposite chiral twists.
    pub fn field_phases(self) -> [[f64; 3]; 3] {
        let t = 2.0 * PI / 3.0;
        let sign = match self {
            Self::Aligned => return [[0.0; 3]; 3],
            Self::ZetaMinus => 1.0,
            Self::ZetaPlus => -1.0,
        };
        [
            [0.0; 3],
            [sign * t, 0.0, -sign * t],
            [-sign * t, 0.0, sign * t],
        ]
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Aligned => "zeta20",
            Self::ZetaMinus => "zeta2minus",
            Self::ZetaPlus => "zeta2plus",
        }
    }

    /// Intermediate `a = 2` state of the ladder.
    pub fn intermediate(self) -> StateVector {
        let s = match self {
            Self::Aligned => Chirality::Zero,
            Self::ZetaMinus => Chirality::Minus,
            Self::ZetaPlus => Chirality::Plus,
        };
        zeta_state(2, s).expect("a = 2 admits every chirality")
    }

    /// Coefficients of the three rungs.
    pub fn coefficients(self) -> [f64; 3] {
        let r3 = 3f64.sqrt();
        match self {
            Self::Aligned => [r3, 2.0, r3],
            Self::ZetaMinus | Self::ZetaPlus => [r3, -1.0, r3],
        }
    }

    /// `ggg → ζ10 → ζ2s → rrr`
    pub fn chain(self) -> [StateVector; 4] {
        [
            zeta_state(0, Chirality::Zero).expect("ggg"),
            zeta_state(1, Chirality::Zero).expect("zeta10"),
            self.intermediate(),
            zeta_state(3, Chirality::Zero).expect("rrr"),
        ]
    }
}

/// Four-level trimer ladder through the selected `a = 2` state.
pub fn zeta_ladder_model(rabis: &[C64], case: ZetaAlignment) -> Result<HamiltonianModel> {
    if rabis.len() != 3 {
        return Err(Error::domain("the zeta ladder needs three Rabi values"));
    }
    let coeffs: Vec<C64> = case.coefficients().iter().map(|&c| C64::new(c, 0.0)).collect();
    chain_model(ModelKind::ZetaLadder, &case.chain(), &coeffs, rabis)
}

pub fn zeta_ladder(fields: &[LaserField], case: ZetaAlignment) -> Result<OperatorMatrix> {
    if fields.len() != 3 {
        return Err(Error::domain("the zeta ladder needs three fields"));
    }
    let rabis: Vec<C64> = fields.iter().map(|f| f.rabi).collect();
    Ok(zeta_ladder_model(&rabis, case)?.evaluate(0.0))
}
