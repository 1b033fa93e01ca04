// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Generators: the atomic Hamiltonian, the fully driven rotating-frame model
//! and every effective ladder built on top of it.
//!
//! Units: ħ = 1, energies and rates in 1/T. A drive with complex Rabi value Ω
//! and unit raising operator `R` contributes `Ω e^{−iωt} R + h.c.`, so for the
//! bare site drive `R = Σ_n e^{iφ_n}|r⟩⟨g|_n`.

mod effective;
mod hierarchy;
mod twisted;

pub use effective::{
    dicke_coefficient, dicke_ladder_model, h_dicke_ladder, h_ladder, h_off_resonant,
    h_off_resonant_trimer, h_resonant_step, zeta_ladder, zeta_ladder_model, EnergyShifts,
    LightShiftDrive, ZetaAlignment, RESONANCE_TOLERANCE,
};
pub use hierarchy::{hierarchy_check, HierarchyLink, HierarchyParams, HierarchyReport};
pub use twisted::{
    drive_spectrum, fine_detunings, h_twisted_ladder, residual_frequencies,
    residual_frequencies_compensated, rotated_ladder_oracle, SpectralTerm, TwistedLadder,
    DEFAULT_SIGMA_FLOOR,
};

use crate::error::{Error, Result};
use crate::geometry::PotentialTable;
use crate::linalg::{CMatrix, CVector, C64};
use crate::states::{self, check_atoms, dim, OperatorMatrix};

/// A drive channel with complex Rabi value, coarse detuning Δ and fine
/// detuning δ (all in 1/T) and per-site phases `φ_n = k·x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaserField {
    pub label: usize,
    pub rabi: C64,
    pub coarse_detuning: f64,
    pub fine_detuning: f64,
    pub site_phases: Vec<f64>,
}

impl LaserField {
    pub fn new(label: usize, rabi: C64, site_phases: Vec<f64>) -> Self {
        Self {
            label,
            rabi,
            coarse_detuning: 0.0,
            fine_detuning: 0.0,
            site_phases,
        }
    }

    pub fn with_detuning(mut self, coarse: f64, fine: f64) -> Self {
        self.coarse_detuning = coarse;
        self.fine_detuning = fine;
        self
    }

    pub fn with_rabi(mut self, rabi: C64) -> Self {
        self.rabi = rabi;
        self
    }

    pub fn total_detuning(&self) -> f64 {
        self.coarse_detuning + self.fine_detuning
    }

    pub fn n_atoms(&self) -> usize {
        self.site_phases.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    FullDriven,
    OffResonantShift,
    ResonantStep,
    Ladder,
    DickeLadder,
    ZetaLadder,
    TwistedLadder,
}

/// `Ω e^{−iωt} R + h.c.` with the Rabi value supplied at evaluation time.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveTerm {
    raising: CMatrix,
    frequency: f64,
}

impl DriveTerm {
    pub fn new(raising: CMatrix, frequency: f64) -> Self {
        Self { raising, frequency }
    }

    pub fn raising(&self) -> &CMatrix {
        &self.raising
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }
}

/// Which picture a fully driven model is written in.
#[derive(Debug, Clone, PartialEq)]
pub enum Frame {
    /// `ω_A` rotated away; blockade energies explicit; drive `j` oscillates at
    /// its coarse detuning `Δ_j` and addresses every site transition.
    Rotating,
    /// Atomic energies dropped and the static light shift `off_resonant`
    /// added; drive `j` oscillates at its fine detuning `δ_j` and only acts on
    /// the rung `j−1 → j` it is resonant with (`Δ_j = (j−1)V`).
    LightShifted { off_resonant: OperatorMatrix, v: f64 },
}

/// Static Hermitian part plus a list of drives.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianModel {
    kind: ModelKind,
    n_atoms: usize,
    static_part: CMatrix,
    drives: Vec<DriveTerm>,
    nominal_rabis: Vec<C64>,
}

impl HamiltonianModel {
    pub fn from_parts(
        kind: ModelKind,
        n_atoms: usize,
        static_part: CMatrix,
        drives: Vec<DriveTerm>,
        nominal_rabis: Vec<C64>,
    ) -> Result<Self> {
        check_atoms(n_atoms)?;
        let d = dim(n_atoms);
        if static_part.nrows() != d || static_part.ncols() != d {
            return Err(Error::domain("static part has wrong shape"));
        }
        if drives.iter().any(|dr| dr.raising.nrows() != d || dr.raising.ncols() != d) {
            return Err(Error::domain("drive operator has wrong shape"));
        }
        if nominal_rabis.len() != drives.len() {
            return Err(Error::domain("one nominal Rabi value per drive is required"));
        }
        if crate::linalg::hermiticity_defect(&static_part)
            > 1e-12 * crate::linalg::max_abs(&static_part).max(1.0)
        {
            return Err(Error::domain("static part is not Hermitian"));
        }
        Ok(Self {
            kind,
            n_atoms,
            static_part,
            drives,
            nominal_rabis,
        })
    }

    /// Time-independent model.
    pub fn static_model(kind: ModelKind, op: &OperatorMatrix) -> Result<Self> {
        Self::from_parts(kind, op.n_atoms(), op.matrix().clone(), Vec::new(), Vec::new())
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        dim(self.n_atoms)
    }

    pub fn n_fields(&self) -> usize {
        self.drives.len()
    }

    pub fn static_part(&self) -> &CMatrix {
        &self.static_part
    }

    pub fn drives(&self) -> &[DriveTerm] {
        &self.drives
    }

    pub fn nominal_rabis(&self) -> &[C64] {
        &self.nominal_rabis
    }

    /// `H(t)` with the Rabi values the model was built with.
    pub fn evaluate(&self, t: f64) -> OperatorMatrix {
        let h = self
            .evaluate_with(t, &self.nominal_rabis)
            .expect("nominal Rabi list matches drive count");
        OperatorMatrix::from_raw(self.n_atoms, h)
    }

    /// `H(t)` for explicit per-drive Rabi values.
    pub fn evaluate_with(&self, t: f64, rabis: &[C64]) -> Result<CMatrix> {
        if rabis.len() != self.drives.len() {
            return Err(Error::domain(format!(
                "{} Rabi values for {} drives",
                rabis.len(),
                self.drives.len()
            )));
        }
        let mut h = self.static_part.clone();
        for (drive, &omega) in self.drives.iter().zip(rabis) {
            if omega == C64::new(0.0, 0.0) {
                continue;
            }
            let c = omega * crate::linalg::cis(-drive.frequency * t);
            let term = &drive.raising * c;
            h += &term + term.adjoint();
        }
        Ok(h)
    }
}

/// `Σ_n a ω_A + Σ_{p<q∈code} v_pq`, diagonal in the code basis.
pub fn h_atomic(n_atoms: usize, omega_a: f64, potentials: &PotentialTable) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    if potentials.len() != n_atoms {
        return Err(Error::domain("potential table size differs from n_atoms"));
    }
    let diag = CVector::from_iterator(
        dim(n_atoms),
        (0..dim(n_atoms)).map(|c| {
            C64::new(
                omega_a * c.count_ones() as f64 + potentials.code_energy(c),
                0.0,
            )
        }),
    );
    Ok(OperatorMatrix::from_raw(n_atoms, CMatrix::from_diagonal(&diag)))
}

/// Unit raising operator `U(φ) σ_a^+ U†(φ)` for the rung `a−1 → a`.
pub(crate) fn rung_raising(n_atoms: usize, a: usize, phases: &[f64]) -> Result<CMatrix> {
    let u = states::twist_unitary(phases)?;
    let sp = states::sigma_plus(n_atoms, a)?;
    Ok(u.matrix() * sp.matrix() * u.matrix().adjoint())
}

fn check_fields(fields: &[LaserField], n_atoms: usize) -> Result<()> {
    for f in fields {
        if f.site_phases.len() != n_atoms {
            return Err(Error::domain(format!(
                "field {} carries {} site phases for {n_atoms} atoms",
                f.label,
                f.site_phases.len()
            )));
        }
    }
    Ok(())
}

/// Fully driven model in the chosen frame.
pub fn h_full_driven(
    fields: &[LaserField],
    potentials: &PotentialTable,
    frame: Frame,
) -> Result<HamiltonianModel> {
    let first = fields
        .first()
        .ok_or_else(|| Error::domain("h_full_driven needs at least one field"))?;
    let n_atoms = first.n_atoms();
    check_atoms(n_atoms)?;
    check_fields(fields, n_atoms)?;
    let rabis = fields.iter().map(|f| f.rabi).collect();
    match frame {
        Frame::Rotating => {
            if potentials.len() != n_atoms {
                return Err(Error::domain("potential table size differs from n_atoms"));
            }
            let static_part = h_atomic(n_atoms, 0.0, potentials)?.into_matrix();
            let drives = fields
                .iter()
                .map(|f| {
                    Ok(DriveTerm::new(
                        states::phased_raising(&f.site_phases)?.into_matrix(),
                        f.coarse_detuning,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            HamiltonianModel::from_parts(ModelKind::FullDriven, n_atoms, static_part, drives, rabis)
        }
        Frame::LightShifted { off_resonant, v } => {
            if off_resonant.n_atoms() != n_atoms {
                return Err(Error::domain("light-shift block size differs from n_atoms"));
            }
            if fields.len() > n_atoms {
                return Err(Error::domain("more resonant fields than ladder rungs"));
            }
            let mut drives = Vec::with_capacity(fields.len());
            for (j, f) in fields.iter().enumerate() {
                let a = j + 1;
                let expected = (a as f64 - 1.0) * v;
                if (f.coarse_detuning - expected).abs() > 1e-9 * v.abs().max(1.0) {
                    return Err(Error::config(
                        format!("fields[{j}].coarse_detuning"),
                        format!(
                            "field {} must be resonant with rung {a} (Δ = {expected}), got {}",
                            f.label, f.coarse_detuning
                        ),
                    ));
                }
                drives.push(DriveTerm::new(
                    rung_raising(n_atoms, a, &f.site_phases)?,
                    f.fine_detuning,
                ));
            }
            HamiltonianModel::from_parts(
                ModelKind::FullDriven,
                n_atoms,
                off_resonant.matrix().clone(),
                drives,
                rabis,
            )
        }
    }
}

/// Drive-only ladder model: rung `a` driven by field `a` with raising
/// operator `U(φ_a) σ_a^+ U†(φ_a)` and no oscillation.
pub fn ladder_model(n_atoms: usize, fields: &[LaserField]) -> Result<HamiltonianModel> {
    check_atoms(n_atoms)?;
    check_fields(fields, n_atoms)?;
    if fields.len() != n_atoms {
        return Err(Error::domain("the ladder needs one field per rung"));
    }
    let drives = fields
        .iter()
        .enumerate()
        .map(|(j, f)| Ok(DriveTerm::new(rung_raising(n_atoms, j + 1, &f.site_phases)?, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    HamiltonianModel::from_parts(
        ModelKind::Ladder,
        n_atoms,
        CMatrix::zeros(dim(n_atoms), dim(n_atoms)),
        drives,
        fields.iter().map(|f| f.rabi).collect(),
    )
}

/// Ladder over an explicit chain of states `|e_0⟩ … |e_M⟩`:
/// drive `a` raises `|e_{a−1}⟩ → c_a |e_a⟩`.
pub fn chain_model(
    kind: ModelKind,
    chain: &[states::StateVector],
    coefficients: &[C64],
    rabis: &[C64],
) -> Result<HamiltonianModel> {
    if chain.len() < 2 || coefficients.len() != chain.len() - 1 || rabis.len() != coefficients.len() {
        return Err(Error::domain("chain needs M+1 states, M coefficients and M Rabi values"));
    }
    let n_atoms = chain[0].n_atoms();
    let drives = coefficients
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            DriveTerm::new(
                chain[k + 1].amplitudes() * chain[k].amplitudes().adjoint() * c,
                0.0,
            )
        })
        .collect();
    HamiltonianModel::from_parts(
        kind,
        n_atoms,
        CMatrix::zeros(dim(n_atoms), dim(n_atoms)),
        drives,
        rabis.to_vec(),
    )
}
