// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Hilbert-space core for N gr-qubits.
//!
//! Basis codes are bit strings: bit `n` set means atom `n` (zero based) sits in
//! `|r⟩`, so code 0 is `|g…g⟩`. Atom 1 of the usual labels is bit 0, e.g. `|rgg⟩`
//! is code `0b001`. The single-qubit computational basis is `|0⟩ = |g⟩`,
//! `|1⟩ = |r⟩`, which fixes the Pauli matrices used by [`chirality_operator`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{cis, hermiticity_defect, max_abs, CMatrix, CVector, C64, I, ONE, ZERO};

pub const MAX_ATOMS: usize = 12;

pub fn dim(n_atoms: usize) -> usize {
    1usize << n_atoms
}

pub(crate) fn check_atoms(n_atoms: usize) -> Result<()> {
    if n_atoms == 0 || n_atoms > MAX_ATOMS {
        return Err(Error::domain(format!(
            "n_atoms = {n_atoms} outside 1..={MAX_ATOMS}"
        )));
    }
    Ok(())
}

fn check_excitation(n_atoms: usize, a: usize) -> Result<()> {
    if a > n_atoms {
        return Err(Error::domain(format!(
            "excitation {a} outside 0..={n_atoms}"
        )));
    }
    Ok(())
}

/// A computational basis state `|{n₁,…,n_a}⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    n_atoms: usize,
    code: usize,
}

impl BasisIndex {
    pub fn new(n_atoms: usize, code: usize) -> Result<Self> {
        check_atoms(n_atoms)?;
        if code >= dim(n_atoms) {
            return Err(Error::domain(format!(
                "code {code} outside 0..{}",
                dim(n_atoms)
            )));
        }
        Ok(Self { n_atoms, code })
    }

    /// Basis state with the listed (zero-based) atoms excited.
    pub fn from_excited(n_atoms: usize, sites: &[usize]) -> Result<Self> {
        check_atoms(n_atoms)?;
        let mut code = 0usize;
        for &s in sites {
            if s >= n_atoms {
                return Err(Error::domain(format!("site {s} outside 0..{n_atoms}")));
            }
            code |= 1 << s;
        }
        Ok(Self { n_atoms, code })
    }

    pub fn code(&self) -> usize {
        self.code
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    /// Excitation number `a`.
    pub fn excitation(&self) -> usize {
        self.code.count_ones() as usize
    }

    pub fn is_excited(&self, site: usize) -> bool {
        self.code >> site & 1 == 1
    }

    pub fn excited_sites(&self) -> Vec<usize> {
        (0..self.n_atoms).filter(|&s| self.is_excited(s)).collect()
    }

    /// Ket label with atom 1 leftmost, e.g. `rgg`.
    pub fn label(&self) -> String {
        (0..self.n_atoms)
            .map(|s| if self.is_excited(s) { 'r' } else { 'g' })
            .collect()
    }
}

/// Codes of weight `a`, ascending.
pub fn codes_with_excitation(n_atoms: usize, a: usize) -> Vec<usize> {
    (0..dim(n_atoms))
        .filter(|c| c.count_ones() as usize == a)
        .collect()
}

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_atoms: usize,
    amps: CVector,
}

impl StateVector {
    /// Normalizes the supplied amplitudes.
    pub fn from_amplitudes(n_atoms: usize, amps: CVector) -> Result<Self> {
        check_atoms(n_atoms)?;
        if amps.len() != dim(n_atoms) {
            return Err(Error::domain(format!(
                "amplitude length {} does not match 2^{n_atoms}",
                amps.len()
            )));
        }
        let norm = amps.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::domain("state has zero or non-finite norm"));
        }
        Ok(Self {
            n_atoms,
            amps: amps / C64::new(norm, 0.0),
        })
    }

    /// Wraps amplitudes without renormalizing.
    pub(crate) fn from_raw(n_atoms: usize, amps: CVector) -> Self {
        Self { n_atoms, amps }
    }

    pub fn basis(index: BasisIndex) -> Self {
        let mut amps = CVector::zeros(dim(index.n_atoms));
        amps[index.code] = ONE;
        Self {
            n_atoms: index.n_atoms,
            amps,
        }
    }

    pub fn ground(n_atoms: usize) -> Result<Self> {
        Ok(Self::basis(BasisIndex::new(n_atoms, 0)?))
    }

    pub fn all_excited(n_atoms: usize) -> Result<Self> {
        check_atoms(n_atoms)?;
        Ok(Self::basis(BasisIndex::new(n_atoms, dim(n_atoms) - 1)?))
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn amplitude(&self, code: usize) -> C64 {
        self.amps[code]
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::domain("dimension mismatch in inner product"));
        }
        Ok(self.amps.dotc(&other.amps))
    }

    /// Equality modulo a global phase.
    pub fn equals_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        match self.inner(other) {
            Ok(ov) => {
                let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { ONE };
                (&self.amps * phase - &other.amps).iter().all(|z| z.norm() < tol)
            }
            Err(_) => false,
        }
    }

    /// `A|ψ⟩`, renormalized.
    pub fn apply(&self, op: &OperatorMatrix) -> Result<StateVector> {
        if op.dim() != self.dim() {
            return Err(Error::domain("operator dimension mismatch"));
        }
        StateVector::from_amplitudes(self.n_atoms, &op.mat * &self.amps)
    }

    /// `⟨ψ|A|ψ⟩`
    pub fn expectation(&self, op: &OperatorMatrix) -> C64 {
        self.amps.dotc(&(&op.mat * &self.amps))
    }

    /// Population of each excitation sector `a = 0..=N`.
    pub fn sector_populations(&self) -> Vec<f64> {
        let mut pops = vec![0.0; self.n_atoms + 1];
        for (code, z) in self.amps.iter().enumerate() {
            pops[code.count_ones() as usize] += z.norm_sqr();
        }
        pops
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            n_atoms: self.n_atoms,
            rho: &self.amps * self.amps.adjoint(),
        }
    }
}

/// Mixed state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_atoms: usize,
    rho: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e−10), unit trace (1e−7) and positivity (−1e−7).
    pub fn from_matrix(n_atoms: usize, rho: CMatrix) -> Result<Self> {
        check_atoms(n_atoms)?;
        if rho.nrows() != dim(n_atoms) || rho.ncols() != dim(n_atoms) {
            return Err(Error::domain("density matrix has wrong shape"));
        }
        if hermiticity_defect(&rho) > 1e-10 {
            return Err(Error::domain("density matrix is not Hermitian"));
        }
        if (rho.trace().re - 1.0).abs() > 1e-7 {
            return Err(Error::domain(format!(
                "density matrix trace {} differs from 1",
                rho.trace().re
            )));
        }
        let dm = Self { n_atoms, rho };
        if dm.min_eigenvalue() < -1e-7 {
            return Err(Error::domain("density matrix has negative eigenvalues"));
        }
        Ok(dm)
    }

    pub(crate) fn from_raw(n_atoms: usize, rho: CMatrix) -> Self {
        Self { n_atoms, rho }
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        psi.to_density()
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        crate::linalg::hermitian_eigen(&self.rho).0[0]
    }

    pub fn expectation(&self, op: &OperatorMatrix) -> C64 {
        (&op.mat * &self.rho).trace()
    }

    pub fn sector_populations(&self) -> Vec<f64> {
        let mut pops = vec![0.0; self.n_atoms + 1];
        for code in 0..self.dim() {
            pops[code.count_ones() as usize] += self.rho[(code, code)].re;
        }
        pops
    }
}

/// Dense operator on the 2^N space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n_atoms: usize,
    mat: CMatrix,
    hermitian: bool,
}

impl OperatorMatrix {
    /// The Hermitian flag is set when `‖A − A†‖_max < 1e−12` (relative to the
    /// largest entry once that exceeds one).
    pub fn new(n_atoms: usize, mat: CMatrix) -> Result<Self> {
        check_atoms(n_atoms)?;
        if mat.nrows() != dim(n_atoms) || mat.ncols() != dim(n_atoms) {
            return Err(Error::domain("operator has wrong shape"));
        }
        Ok(Self::from_raw(n_atoms, mat))
    }

    pub(crate) fn from_raw(n_atoms: usize, mat: CMatrix) -> Self {
        let scale = max_abs(&mat).max(1.0);
        let hermitian = hermiticity_defect(&mat) < 1e-12 * scale;
        Self {
            n_atoms,
            mat,
            hermitian,
        }
    }

    pub fn zero(n_atoms: usize) -> Result<Self> {
        check_atoms(n_atoms)?;
        Ok(Self::from_raw(n_atoms, CMatrix::zeros(dim(n_atoms), dim(n_atoms))))
    }

    pub fn identity(n_atoms: usize) -> Result<Self> {
        check_atoms(n_atoms)?;
        Ok(Self::from_raw(
            n_atoms,
            CMatrix::identity(dim(n_atoms), dim(n_atoms)),
        ))
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dagger(&self) -> Self {
        Self::from_raw(self.n_atoms, self.mat.adjoint())
    }

    pub fn compose(&self, rhs: &OperatorMatrix) -> Self {
        Self::from_raw(self.n_atoms, &self.mat * &rhs.mat)
    }

    pub fn plus(&self, rhs: &OperatorMatrix) -> Self {
        Self::from_raw(self.n_atoms, &self.mat + &rhs.mat)
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self::from_raw(self.n_atoms, &self.mat * c)
    }

    /// `⟨bra|A|ket⟩`
    pub fn element(&self, bra: &StateVector, ket: &StateVector) -> C64 {
        bra.amps.dotc(&(&self.mat * &ket.amps))
    }

    /// `U A U†`
    pub fn conjugated_by(&self, u: &OperatorMatrix) -> Self {
        Self::from_raw(self.n_atoms, &u.mat * &self.mat * u.mat.adjoint())
    }
}

/// `|D^N_a(φ)⟩`: equal superposition of weight-`a` codes, each carrying
/// `exp(i Σ_{l} φ_{n_l})` over its excited sites.
pub fn build_twisted_dicke(n_atoms: usize, a: usize, site_phases: &[f64]) -> Result<StateVector> {
    check_atoms(n_atoms)?;
    check_excitation(n_atoms, a)?;
    if site_phases.len() != n_atoms {
        return Err(Error::domain("site_phases length differs from n_atoms"));
    }
    let mut amps = CVector::zeros(dim(n_atoms));
    for code in codes_with_excitation(n_atoms, a) {
        amps[code] = cis(code_phase(code, site_phases));
    }
    StateVector::from_amplitudes(n_atoms, amps)
}

pub fn build_dicke(n_atoms: usize, a: usize) -> Result<StateVector> {
    build_twisted_dicke(n_atoms, a, &vec![0.0; n_atoms])
}

/// `(1/√A) Σ A_n |g…r_n…g⟩`
pub fn build_general_w(amplitudes: &[C64]) -> Result<StateVector> {
    let n_atoms = amplitudes.len();
    check_atoms(n_atoms)?;
    if amplitudes.iter().filter(|z| z.norm() > 0.0).count() < 2 {
        return Err(Error::domain(
            "a W state needs at least two nonzero amplitudes",
        ));
    }
    let mut amps = CVector::zeros(dim(n_atoms));
    for (n, &z) in amplitudes.iter().enumerate() {
        amps[1 << n] = z;
    }
    StateVector::from_amplitudes(n_atoms, amps)
}

/// `(|g…g⟩ + e^{iφ}|r…r⟩)/√2`
pub fn build_ghz(n_atoms: usize, relative_phase: f64) -> Result<StateVector> {
    if n_atoms < 2 {
        return Err(Error::domain("GHZ state needs at least two atoms"));
    }
    check_atoms(n_atoms)?;
    let mut amps = CVector::zeros(dim(n_atoms));
    amps[0] = ONE;
    amps[dim(n_atoms) - 1] = cis(relative_phase);
    StateVector::from_amplitudes(n_atoms, amps)
}

/// Sign label of the trimer eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    Zero,
    Plus,
    Minus,
}

impl Chirality {
    pub fn eigenvalue(self) -> f64 {
        match self {
            Chirality::Zero => 0.0,
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
        }
    }
}

/// `|ζ_{as}⟩` for the trimer. Sectors 0 and 3 only admit [`Chirality::Zero`].
pub fn zeta_state(a: usize, s: Chirality) -> Result<StateVector> {
    let w = cis(2.0 * PI / 3.0);
    let (c1, c2, c3) = match s {
        Chirality::Zero => (ONE, ONE, ONE),
        Chirality::Plus => (w.conj(), ONE, w),
        Chirality::Minus => (w, ONE, w.conj()),
    };
    let mut amps = CVector::zeros(8);
    match (a, s) {
        (0, Chirality::Zero) => amps[0] = ONE,
        (3, Chirality::Zero) => amps[7] = ONE,
        (1, _) => {
            amps[0b001] = c1;
            amps[0b010] = c2;
            amps[0b100] = c3;
        }
        (2, _) => {
            amps[0b110] = c1;
            amps[0b101] = c2;
            amps[0b011] = c3;
        }
        _ => {
            return Err(Error::domain(format!(
                "no zeta state for a = {a} with chirality {s:?}"
            )))
        }
    }
    StateVector::from_amplitudes(3, amps)
}

/// All eight ζ states in the order ζ00, ζ10, ζ1+, ζ1−, ζ20, ζ2+, ζ2−, ζ30.
pub fn zeta_basis() -> Vec<(String, StateVector)> {
    let labels = [
        (0, Chirality::Zero, "zeta00"),
        (1, Chirality::Zero, "zeta10"),
        (1, Chirality::Plus, "zeta1+"),
        (1, Chirality::Minus, "zeta1-"),
        (2, Chirality::Zero, "zeta20"),
        (2, Chirality::Plus, "zeta2+"),
        (2, Chirality::Minus, "zeta2-"),
        (3, Chirality::Zero, "zeta30"),
    ];
    labels
        .iter()
        .map(|&(a, s, name)| (name.to_string(), zeta_state(a, s).expect("valid zeta label")))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// Single-site Pauli matrix embedded at `site`.
pub fn pauli(n_atoms: usize, site: usize, axis: PauliAxis) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    if site >= n_atoms {
        return Err(Error::domain(format!("site {site} outside 0..{n_atoms}")));
    }
    let d = dim(n_atoms);
    let mut m = CMatrix::zeros(d, d);
    for code in 0..d {
        let excited = code >> site & 1 == 1;
        let flipped = code ^ (1 << site);
        match axis {
            PauliAxis::X => m[(flipped, code)] = ONE,
            // σy|0⟩ = i|1⟩, σy|1⟩ = −i|0⟩
            PauliAxis::Y => m[(flipped, code)] = if excited { -I } else { I },
            PauliAxis::Z => m[(code, code)] = if excited { -ONE } else { ONE },
        }
    }
    Ok(OperatorMatrix::from_raw(n_atoms, m))
}

/// `χ = (1/2√3) Σ ε_{αβγ} σ_{1α} σ_{2β} σ_{3γ}` on three atoms.
pub fn chirality_operator() -> OperatorMatrix {
    use PauliAxis::*;
    let axes = [X, Y, Z];
    let perms: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    let mut acc = CMatrix::zeros(8, 8);
    for (p, sign) in perms {
        let s1 = pauli(3, 0, axes[p[0]]).expect("site in range");
        let s2 = pauli(3, 1, axes[p[1]]).expect("site in range");
        let s3 = pauli(3, 2, axes[p[2]]).expect("site in range");
        acc += (s1.matrix() * s2.matrix() * s3.matrix()) * C64::new(sign, 0.0);
    }
    OperatorMatrix::from_raw(3, acc / C64::new(2.0 * 3f64.sqrt(), 0.0))
}

fn code_phase(code: usize, site_phases: &[f64]) -> f64 {
    site_phases
        .iter()
        .enumerate()
        .filter(|(n, _)| code >> n & 1 == 1)
        .map(|(_, p)| p)
        .sum()
}

/// Diagonal `U(φ)` with entry `exp(i Σ_{n∈code} φ_n)`.
pub fn twist_unitary(site_phases: &[f64]) -> Result<OperatorMatrix> {
    let n_atoms = site_phases.len();
    check_atoms(n_atoms)?;
    let diag = CVector::from_iterator(
        dim(n_atoms),
        (0..dim(n_atoms)).map(|c| cis(code_phase(c, site_phases))),
    );
    Ok(OperatorMatrix::from_raw(n_atoms, CMatrix::from_diagonal(&diag)))
}

/// Moves one excitation between two atoms: couples equal-weight codes at
/// Hamming distance two.
pub fn hd2_operator(n_atoms: usize) -> Result<OperatorMatrix> {
    if n_atoms < 2 {
        return Err(Error::domain("Hd2 needs at least two atoms"));
    }
    check_atoms(n_atoms)?;
    let d = dim(n_atoms);
    let mut m = CMatrix::zeros(d, d);
    for c in 0..d {
        for c2 in 0..d {
            if c.count_ones() == c2.count_ones() && (c ^ c2).count_ones() == 2 {
                m[(c2, c)] = ONE;
            }
        }
    }
    Ok(OperatorMatrix::from_raw(n_atoms, m))
}

/// `σ_a^−`: collective lowering restricted to weight-`a` inputs.
pub fn sigma_minus(n_atoms: usize, a: usize) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    if a == 0 || a > n_atoms {
        return Err(Error::domain(format!(
            "sigma_minus needs 1 ≤ a ≤ {n_atoms}, got {a}"
        )));
    }
    let d = dim(n_atoms);
    let mut m = CMatrix::zeros(d, d);
    for code in codes_with_excitation(n_atoms, a) {
        for n in 0..n_atoms {
            if code >> n & 1 == 1 {
                m[(code ^ (1 << n), code)] = ONE;
            }
        }
    }
    Ok(OperatorMatrix::from_raw(n_atoms, m))
}

/// `σ_a^+ = (σ_a^−)†`, raising weight `a − 1` to weight `a`.
pub fn sigma_plus(n_atoms: usize, a: usize) -> Result<OperatorMatrix> {
    Ok(sigma_minus(n_atoms, a)?.dagger())
}

/// `Σ_n e^{iφ_n} |r⟩⟨g|_n`
pub fn phased_raising(site_phases: &[f64]) -> Result<OperatorMatrix> {
    let n_atoms = site_phases.len();
    check_atoms(n_atoms)?;
    let d = dim(n_atoms);
    let mut m = CMatrix::zeros(d, d);
    for code in 0..d {
        for (n, &phi) in site_phases.iter().enumerate() {
            if code >> n & 1 == 0 {
                m[(code | (1 << n), code)] += cis(phi);
            }
        }
    }
    Ok(OperatorMatrix::from_raw(n_atoms, m))
}

/// `Σ_n |g⟩⟨r|_n`
pub fn collective_lowering(n_atoms: usize) -> Result<OperatorMatrix> {
    Ok(phased_raising(&vec![0.0; n_atoms])?.dagger())
}

/// `Σ_n (|g⟩⟨g| − |r⟩⟨r|)_n`
pub fn collective_inversion(n_atoms: usize) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    let diag = CVector::from_iterator(
        dim(n_atoms),
        (0..dim(n_atoms)).map(|c| C64::new(n_atoms as f64 - 2.0 * c.count_ones() as f64, 0.0)),
    );
    Ok(OperatorMatrix::from_raw(n_atoms, CMatrix::from_diagonal(&diag)))
}

/// `P_a`
pub fn excitation_projector(n_atoms: usize, a: usize) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    check_excitation(n_atoms, a)?;
    let diag = CVector::from_iterator(
        dim(n_atoms),
        (0..dim(n_atoms)).map(|c| if c.count_ones() as usize == a { ONE } else { ZERO }),
    );
    Ok(OperatorMatrix::from_raw(n_atoms, CMatrix::from_diagonal(&diag)))
}

/// Projector on the span of `|D^N_a(φ)⟩`, `a = 0..=N`.
pub fn dicke_projector(n_atoms: usize, site_phases: &[f64]) -> Result<OperatorMatrix> {
    let d = dim(n_atoms);
    let mut m = CMatrix::zeros(d, d);
    for a in 0..=n_atoms {
        let v = build_twisted_dicke(n_atoms, a, site_phases)?;
        m += v.amplitudes() * v.amplitudes().adjoint();
    }
    Ok(OperatorMatrix::from_raw(n_atoms, m))
}

/// `|ψ⟩⟨φ|`
pub fn outer(ket: &StateVector, bra: &StateVector) -> OperatorMatrix {
    OperatorMatrix::from_raw(ket.n_atoms, ket.amplitudes() * bra.amplitudes().adjoint())
}

/// Anything a fidelity can be evaluated on.
pub trait QuantumState {
    fn n_atoms(&self) -> usize;
    /// `⟨t|ρ|t⟩` for a normalized target.
    fn target_weight(&self, target: &StateVector) -> f64;
    /// `⟨P_a⟩` for `a = 0..=N`.
    fn populations(&self) -> Vec<f64>;
}

impl QuantumState for StateVector {
    fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    fn target_weight(&self, target: &StateVector) -> f64 {
        target.amps.dotc(&self.amps).norm_sqr()
    }

    fn populations(&self) -> Vec<f64> {
        self.sector_populations()
    }
}

impl QuantumState for DensityMatrix {
    fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    fn target_weight(&self, target: &StateVector) -> f64 {
        target.amps.dotc(&(&self.rho * &target.amps)).re
    }

    fn populations(&self) -> Vec<f64> {
        self.sector_populations()
    }
}

/// `|⟨t|ψ⟩|` or `√⟨t|ρ|t⟩`, clamped to `[0, 1]`.
pub fn fidelity<S: QuantumState>(state: &S, target: &StateVector) -> Result<f64> {
    if state.n_atoms() != target.n_atoms() {
        return Err(Error::domain("fidelity dimension mismatch"));
    }
    Ok(state.target_weight(target).max(0.0).sqrt().min(1.0))
}
