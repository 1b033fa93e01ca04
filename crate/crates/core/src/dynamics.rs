// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Schrödinger and Lindblad propagation under a [`HamiltonianModel`] driven by
//! a piecewise-constant [`PulseSchedule`].
//!
//! Both integrators step in the interaction picture of the model's static
//! part: with `H_s = W E W†` the propagated quantity is `e^{iEt} W† ψ`, the
//! phases `e^{i(E_a − E_b)t}` and `e^{−iω_j t}` are evaluated exactly at every
//! RK4 stage, and the fixed step only has to resolve what is left. Every run
//! is repeated at half the step and rejected if any recorded observable moves
//! by more than the halving tolerance.

use crate::error::{Error, IntegrationDiagnostics, Result};
use crate::geometry::PotentialTable;
use crate::hamiltonians::HamiltonianModel;
use crate::linalg::{cis, hermitian_eigen, max_abs, CMatrix, CVector, C64, I};
use crate::states::{
    collective_inversion, collective_lowering, fidelity, DensityMatrix, QuantumState,
    StateVector,
};

/// Constant Rabi values held for `duration`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub duration: f64,
    pub rabis: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    segments: Vec<Segment>,
}

impl PulseSchedule {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let first = segments
            .first()
            .ok_or_else(|| Error::domain("schedule has no segments"))?;
        let n = first.rabis.len();
        for (i, s) in segments.iter().enumerate() {
            if !(s.duration > 0.0) || !s.duration.is_finite() {
                return Err(Error::domain(format!("segment {i} has non-positive duration")));
            }
            if s.rabis.len() != n {
                return Err(Error::domain(format!("segment {i} has a different field count")));
            }
        }
        Ok(Self { segments })
    }

    pub fn constant(duration: f64, rabis: Vec<C64>) -> Result<Self> {
        Self::new(vec![Segment { duration, rabis }])
    }

    /// Appends a segment.
    pub fn then(mut self, duration: f64, rabis: Vec<C64>) -> Result<Self> {
        self.segments.push(Segment { duration, rabis });
        Self::new(self.segments)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn n_fields(&self) -> usize {
        self.segments[0].rabis.len()
    }

    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// `A(t) = ∫₀ᵗ Σ_j |Ω_j|² dt′`, exact for the piecewise-constant drive.
    pub fn energy_until(&self, t: f64) -> f64 {
        let mut start = 0.0;
        let mut acc = 0.0;
        for s in &self.segments {
            let span = (t - start).clamp(0.0, s.duration);
            acc += span * s.rabis.iter().map(|z| z.norm_sqr()).sum::<f64>();
            start += s.duration;
            if t <= start {
                break;
            }
        }
        acc
    }
}

/// `A(T)` over the whole schedule.
pub fn pulse_energy(schedule: &PulseSchedule) -> f64 {
    schedule.energy_until(schedule.total_time())
}

/// Collective decay `√Γ Σσ⁻` and collective dephasing `√γ Σσ_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub gamma_decay: f64,
    pub gamma_dephase: f64,
}

impl NoiseModel {
    pub fn new(gamma_decay: f64, gamma_dephase: f64) -> Result<Self> {
        if !(gamma_decay >= 0.0) || !(gamma_dephase >= 0.0) {
            return Err(Error::domain("noise rates must be non-negative"));
        }
        Ok(Self {
            gamma_decay,
            gamma_dephase,
        })
    }

    pub fn none() -> Self {
        Self {
            gamma_decay: 0.0,
            gamma_dephase: 0.0,
        }
    }

    /// Jump operators with their rates folded in.
    pub fn jump_operators(&self, n_atoms: usize) -> Result<Vec<CMatrix>> {
        let mut ops = Vec::new();
        if self.gamma_decay > 0.0 {
            ops.push(
                collective_lowering(n_atoms)?.into_matrix() * C64::new(self.gamma_decay.sqrt(), 0.0),
            );
        }
        if self.gamma_dephase > 0.0 {
            ops.push(
                collective_inversion(n_atoms)?.into_matrix()
                    * C64::new(self.gamma_dephase.sqrt(), 0.0),
            );
        }
        Ok(ops)
    }
}

/// Target state, optionally rotating as `e^{−iE_c t}` per basis code.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Fixed(StateVector),
    Rotating { base: StateVector, energies: Vec<f64> },
}

impl Target {
    /// Base state co-rotating with the interaction energies of `potentials`.
    pub fn rotating(base: StateVector, potentials: &PotentialTable) -> Self {
        let energies = (0..base.dim()).map(|c| potentials.code_energy(c)).collect();
        Target::Rotating { base, energies }
    }

    pub fn state_at(&self, t: f64) -> StateVector {
        match self {
            Target::Fixed(s) => s.clone(),
            Target::Rotating { base, energies } => {
                let amps = CVector::from_iterator(
                    base.dim(),
                    base.amplitudes()
                        .iter()
                        .zip(energies)
                        .map(|(z, e)| z * cis(-e * t)),
                );
                StateVector::from_raw(base.n_atoms(), amps)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedTarget {
    pub name: String,
    pub target: Target,
}

impl NamedTarget {
    pub fn fixed(name: &str, state: StateVector) -> Self {
        Self {
            name: name.to_string(),
            target: Target::Fixed(state),
        }
    }

    pub fn new(name: &str, target: Target) -> Self {
        Self {
            name: name.to_string(),
            target,
        }
    }
}

/// Step control shared by both integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Steps per period of the fastest interaction-picture frequency.
    pub steps_per_period: f64,
    pub min_steps_per_segment: usize,
    /// Approximate number of recorded samples over the whole run.
    pub record_points: usize,
    pub verify_halving: bool,
    pub halving_tolerance: f64,
    pub norm_tolerance: f64,
    pub trace_tolerance: f64,
    pub negativity_floor: f64,
    pub max_steps: usize,
}

/// Smallest `steps_per_period` a config may request.
pub const MIN_STEPS_PER_PERIOD: f64 = 40.0;

impl Default for StepControl {
    fn default() -> Self {
        Self {
            steps_per_period: 80.0,
            min_steps_per_segment: 64,
            record_points: 400,
            verify_halving: true,
            halving_tolerance: 1e-6,
            norm_tolerance: 1e-9,
            trace_tolerance: 1e-7,
            negativity_floor: -1e-5,
            max_steps: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct RunDiagnostics {
    pub steps: usize,
    pub max_step: f64,
    pub fastest_frequency: f64,
    pub halving_delta: f64,
    pub norm_drift: f64,
    pub trace_drift: f64,
    pub hermiticity_drift: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FinalState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

/// Observables at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub populations: Vec<f64>,
    pub fidelities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub times: Vec<f64>,
    /// `populations[k][a] = ⟨P_a⟩(t_k)`
    pub populations: Vec<Vec<f64>>,
    pub target_names: Vec<String>,
    /// `fidelities[i][k]` for target `i`.
    pub fidelities: Vec<Vec<f64>>,
    pub pulse_energy: f64,
    pub final_state: FinalState,
    pub diagnostics: RunDiagnostics,
}

impl RunResult {
    pub fn fidelity_trace(&self, name: &str) -> Option<&[f64]> {
        let i = self.target_names.iter().position(|n| n == name)?;
        Some(&self.fidelities[i])
    }

    pub fn final_fidelity(&self, name: &str) -> Option<f64> {
        self.fidelity_trace(name).and_then(|f| f.last().copied())
    }

    /// First time at which the trace attains its maximum, with that maximum.
    pub fn peak(&self, name: &str) -> Option<(f64, f64)> {
        let trace = self.fidelity_trace(name)?;
        let mut best = (self.times[0], trace[0]);
        for (&t, &f) in self.times.iter().zip(trace) {
            if f > best.1 {
                best = (t, f);
            }
        }
        Some(best)
    }

    pub fn population_trace(&self, a: usize) -> Vec<f64> {
        self.populations.iter().map(|p| p[a]).collect()
    }

    pub fn final_populations(&self) -> &[f64] {
        self.populations.last().expect("at least one sample")
    }

    fn max_deviation(&self, other: &RunResult) -> f64 {
        let mut d: f64 = 0.0;
        for (a, b) in self.populations.iter().zip(&other.populations) {
            for (x, y) in a.iter().zip(b) {
                d = d.max((x - y).abs());
            }
        }
        for (a, b) in self.fidelities.iter().zip(&other.fidelities) {
            for (x, y) in a.iter().zip(b) {
                d = d.max((x - y).abs());
            }
        }
        d
    }
}

/// Populations and fidelities of one state.
pub fn record_observables<S: QuantumState>(state: &S, t: f64, targets: &[NamedTarget]) -> Result<Observation> {
    let fidelities = targets
        .iter()
        .map(|nt| fidelity(state, &nt.target.state_at(t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Observation {
        populations: state.populations(),
        fidelities,
    })
}

/// Model rewritten in the eigenbasis of its static part.
struct Frame {
    n_atoms: usize,
    energies: Vec<f64>,
    basis: Option<CMatrix>,
    raising: Vec<CMatrix>,
    lowering: Vec<CMatrix>,
    freqs: Vec<f64>,
}

impl Frame {
    fn new(model: &HamiltonianModel) -> Self {
        let s = model.static_part();
        let d = s.nrows();
        let off_diag = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(0.0f64, |acc, (i, j)| acc.max(s[(i, j)].norm()));
        let (energies, basis) = if off_diag == 0.0 {
            ((0..d).map(|i| s[(i, i)].re).collect(), None)
        } else {
            let (vals, vecs) = hermitian_eigen(s);
            (vals, Some(vecs))
        };
        let to_eigen = |m: &CMatrix| match &basis {
            None => m.clone(),
            Some(w) => w.adjoint() * m * w,
        };
        let raising: Vec<CMatrix> = model.drives().iter().map(|dr| to_eigen(dr.raising())).collect();
        let lowering = raising.iter().map(|r| r.adjoint()).collect();
        Self {
            n_atoms: model.n_atoms(),
            energies,
            basis,
            raising,
            lowering,
            freqs: model.drives().iter().map(|dr| dr.frequency()).collect(),
        }
    }

    fn to_eigen_vec(&self, v: &CVector) -> CVector {
        match &self.basis {
            None => v.clone(),
            Some(w) => w.adjoint() * v,
        }
    }

    fn to_eigen_mat(&self, m: &CMatrix) -> CMatrix {
        match &self.basis {
            None => m.clone(),
            Some(w) => w.adjoint() * m * w,
        }
    }

    /// `e^{iEt}`
    fn phases(&self, t: f64) -> CVector {
        CVector::from_iterator(self.energies.len(), self.energies.iter().map(|e| cis(e * t)))
    }

    /// Lab-frame amplitudes from interaction-picture ones.
    fn lab_vec(&self, psi_i: &CVector, t: f64) -> CVector {
        let u = self.phases(t);
        let v = psi_i.component_mul(&u.map(|z| z.conj()));
        match &self.basis {
            None => v,
            Some(w) => w * v,
        }
    }

    fn lab_mat(&self, rho_i: &CMatrix, t: f64) -> CMatrix {
        let u = self.phases(t);
        let d = u.len();
        let m = CMatrix::from_fn(d, d, |a, b| rho_i[(a, b)] * u[a].conj() * u[b]);
        match &self.basis {
            None => m,
            Some(w) => w * m * w.adjoint(),
        }
    }

    /// Largest oscillation frequency of any coupled element plus the drive
    /// strength bound.
    fn fastest_frequency(&self, schedule: &PulseSchedule) -> f64 {
        let mut max_rabi = vec![0.0f64; self.raising.len()];
        for s in schedule.segments() {
            for (m, z) in max_rabi.iter_mut().zip(&s.rabis) {
                *m = m.max(z.norm());
            }
        }
        let mut f_osc: f64 = 0.0;
        let mut strength = 0.0;
        for (j, r) in self.raising.iter().enumerate() {
            if max_rabi[j] == 0.0 {
                continue;
            }
            strength += 2.0 * max_rabi[j] * r.norm();
            for a in 0..r.nrows() {
                for b in 0..r.ncols() {
                    if r[(a, b)].norm() > 1e-12 {
                        let f = (self.energies[a] - self.energies[b] - self.freqs[j]).abs();
                        f_osc = f_osc.max(f);
                    }
                }
            }
        }
        f_osc + strength
    }

    /// `H_I(t)` for the given Rabi values.
    fn h_int(&self, t: f64, rabis: &[C64]) -> CMatrix {
        let d = self.energies.len();
        let mut m = CMatrix::zeros(d, d);
        for (j, &omega) in rabis.iter().enumerate().take(self.raising.len()) {
            if omega.norm_sqr() == 0.0 {
                continue;
            }
            let c = omega * cis(-self.freqs[j] * t);
            m.zip_zip_apply(&self.raising[j], &self.lowering[j], |x, r, l| {
                *x += r * c + l * c.conj()
            });
        }
        let u = self.phases(t);
        for a in 0..d {
            for b in 0..d {
                m[(a, b)] *= u[a] * u[b].conj();
            }
        }
        m
    }
}

/// `(steps, stride)` for one segment.
fn segment_plan(duration: f64, total: f64, h_max: f64, control: &StepControl, refine: usize) -> (usize, usize) {
    let records = ((control.record_points as f64 * duration / total).round() as usize).max(1);
    let wanted = (duration / h_max).ceil().max(control.min_steps_per_segment as f64) as usize;
    let per_record = wanted.div_ceil(records).max(1);
    (records * per_record * refine, per_record * refine)
}

fn check_inputs(model: &HamiltonianModel, schedule: &PulseSchedule, n_atoms: usize, control: &StepControl) -> Result<()> {
    if model.n_atoms() != n_atoms {
        return Err(Error::domain("initial state and model differ in size"));
    }
    if schedule.n_fields() != model.n_fields() {
        return Err(Error::domain(format!(
            "schedule drives {} fields but the model has {}",
            schedule.n_fields(),
            model.n_fields()
        )));
    }
    if !(control.steps_per_period >= 1.0) || control.record_points == 0 {
        return Err(Error::domain("step control needs steps_per_period ≥ 1 and record_points ≥ 1"));
    }
    Ok(())
}

fn integration_error(reason: &str, diag: &RunDiagnostics) -> Error {
    Error::Integration(Box::new(IntegrationDiagnostics {
        reason: reason.to_string(),
        steps: diag.steps,
        step_size: diag.max_step,
        halving_delta: diag.halving_delta,
        norm_drift: diag.norm_drift,
        trace_drift: diag.trace_drift,
        min_eigenvalue: diag.min_eigenvalue,
    }))
}

fn pure_pass(
    frame: &Frame,
    schedule: &PulseSchedule,
    psi0: &StateVector,
    targets: &[NamedTarget],
    control: &StepControl,
    refine: usize,
) -> Result<RunResult> {
    let fastest = frame.fastest_frequency(schedule);
    let total = schedule.total_time();
    let h_max = if fastest > 0.0 {
        2.0 * std::f64::consts::PI / (control.steps_per_period * fastest)
    } else {
        f64::INFINITY
    };
    let mut psi = frame.to_eigen_vec(psi0.amplitudes());
    let mut t = 0.0;
    let mut result = RunResult {
        times: Vec::new(),
        populations: Vec::new(),
        target_names: targets.iter().map(|t| t.name.clone()).collect(),
        fidelities: vec![Vec::new(); targets.len()],
        pulse_energy: pulse_energy(schedule),
        final_state: FinalState::Pure(psi0.clone()),
        diagnostics: RunDiagnostics {
            fastest_frequency: fastest,
            ..Default::default()
        },
    };
    let record = |res: &mut RunResult, psi: &CVector, t: f64| -> Result<StateVector> {
        let lab = StateVector::from_raw(frame.n_atoms, frame.lab_vec(psi, t));
        let obs = record_observables(&lab, t, targets)?;
        res.times.push(t);
        res.populations.push(obs.populations);
        for (trace, f) in res.fidelities.iter_mut().zip(obs.fidelities) {
            trace.push(f);
        }
        Ok(lab)
    };
    record(&mut result, &psi, 0.0)?;
    let mut steps_total = 0usize;
    let mut last = psi0.clone();
    for seg in schedule.segments() {
        let (steps, stride) = segment_plan(seg.duration, total, h_max, control, refine);
        steps_total += steps;
        if steps_total > control.max_steps {
            return Err(integration_error("step budget exceeded", &result.diagnostics));
        }
        let h = seg.duration / steps as f64;
        result.diagnostics.max_step = result.diagnostics.max_step.max(h);
        let t0 = t;
        let rhs = |tt: f64, v: &CVector| -> CVector { frame.h_int(tt, &seg.rabis) * v * (-I) };
        for k in 0..steps {
            let tk = t0 + k as f64 * h;
            let k1 = rhs(tk, &psi);
            let k2 = rhs(tk + 0.5 * h, &(&psi + &k1 * C64::new(0.5 * h, 0.0)));
            let k3 = rhs(tk + 0.5 * h, &(&psi + &k2 * C64::new(0.5 * h, 0.0)));
            let k4 = rhs(tk + h, &(&psi + &k3 * C64::new(h, 0.0)));
            psi += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0);
            let drift = (psi.norm() - 1.0).abs();
            result.diagnostics.norm_drift = result.diagnostics.norm_drift.max(drift);
            if (k + 1) % stride == 0 {
                let tt = if k + 1 == steps { t0 + seg.duration } else { t0 + (k + 1) as f64 * h };
                last = record(&mut result, &psi, tt)?;
            }
        }
        t = t0 + seg.duration;
    }
    result.diagnostics.steps = steps_total;
    result.final_state = FinalState::Pure(last);
    if result.diagnostics.norm_drift > control.norm_tolerance {
        return Err(integration_error("norm drift above tolerance", &result.diagnostics));
    }
    Ok(result)
}

/// Unitary propagation `i∂ψ = H(t)ψ`.
pub fn evolve_pure(
    model: &HamiltonianModel,
    schedule: &PulseSchedule,
    psi0: &StateVector,
    control: &StepControl,
    targets: &[NamedTarget],
) -> Result<RunResult> {
    check_inputs(model, schedule, psi0.n_atoms(), control)?;
    if (psi0.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::domain("initial state is not normalized"));
    }
    let frame = Frame::new(model);
    let coarse = pure_pass(&frame, schedule, psi0, targets, control, 1)?;
    if !control.verify_halving {
        return Ok(coarse);
    }
    let mut fine = pure_pass(&frame, schedule, psi0, targets, control, 2)?;
    fine.diagnostics.halving_delta = fine.max_deviation(&coarse);
    if fine.diagnostics.halving_delta > control.halving_tolerance {
        return Err(integration_error("step halving changed the result", &fine.diagnostics));
    }
    Ok(fine)
}

struct Dissipator {
    jumps: Vec<CMatrix>,
    jumps_dag: Vec<CMatrix>,
    products: Vec<CMatrix>,
}

fn mixed_pass(
    frame: &Frame,
    schedule: &PulseSchedule,
    rho0: &DensityMatrix,
    diss: &Dissipator,
    targets: &[NamedTarget],
    control: &StepControl,
    refine: usize,
) -> Result<RunResult> {
    let fastest = frame.fastest_frequency(schedule);
    let total = schedule.total_time();
    let h_max = if fastest > 0.0 {
        2.0 * std::f64::consts::PI / (control.steps_per_period * fastest)
    } else {
        f64::INFINITY
    };
    let d = rho0.dim();
    let mut rho = frame.to_eigen_mat(rho0.matrix());
    let mut t = 0.0;
    let mut result = RunResult {
        times: Vec::new(),
        populations: Vec::new(),
        target_names: targets.iter().map(|t| t.name.clone()).collect(),
        fidelities: vec![Vec::new(); targets.len()],
        pulse_energy: pulse_energy(schedule),
        final_state: FinalState::Mixed(rho0.clone()),
        diagnostics: RunDiagnostics {
            fastest_frequency: fastest,
            min_eigenvalue: f64::INFINITY,
            ..Default::default()
        },
    };
    let record = |res: &mut RunResult, rho: &CMatrix, t: f64| -> Result<DensityMatrix> {
        let lab = DensityMatrix::from_raw(frame.n_atoms, frame.lab_mat(rho, t));
        let min_eig = lab.min_eigenvalue();
        res.diagnostics.min_eigenvalue = res.diagnostics.min_eigenvalue.min(min_eig);
        if min_eig < control.negativity_floor {
            return Err(integration_error("density matrix lost positivity", &res.diagnostics));
        }
        let obs = record_observables(&lab, t, targets)?;
        res.times.push(t);
        res.populations.push(obs.populations);
        for (trace, f) in res.fidelities.iter_mut().zip(obs.fidelities) {
            trace.push(f);
        }
        Ok(lab)
    };
    record(&mut result, &rho, 0.0)?;
    let trace0 = rho0.trace();
    let mut steps_total = 0usize;
    let mut last = rho0.clone();
    let half = C64::new(0.5, 0.0);
    for seg in schedule.segments() {
        let (steps, stride) = segment_plan(seg.duration, total, h_max, control, refine);
        steps_total += steps;
        if steps_total > control.max_steps {
            return Err(integration_error("step budget exceeded", &result.diagnostics));
        }
        let h = seg.duration / steps as f64;
        result.diagnostics.max_step = result.diagnostics.max_step.max(h);
        let t0 = t;
        let rhs = |tt: f64, r: &CMatrix| -> CMatrix {
            let hi = frame.h_int(tt, &seg.rabis);
            let mut out = (&hi * r - r * &hi) * (-I);
            if diss.jumps.is_empty() {
                return out;
            }
            let u = frame.phases(tt);
            let phase = CMatrix::from_fn(d, d, |a, b| u[a] * u[b].conj());
            for ((l, ld), k) in diss.jumps.iter().zip(&diss.jumps_dag).zip(&diss.products) {
                let li = l.component_mul(&phase);
                let ldi = ld.component_mul(&phase);
                let ki = k.component_mul(&phase);
                out += &li * r * &ldi - (&ki * r + r * &ki) * half;
            }
            out
        };
        for k in 0..steps {
            let tk = t0 + k as f64 * h;
            let k1 = rhs(tk, &rho);
            let k2 = rhs(tk + 0.5 * h, &(&rho + &k1 * C64::new(0.5 * h, 0.0)));
            let k3 = rhs(tk + 0.5 * h, &(&rho + &k2 * C64::new(0.5 * h, 0.0)));
            let k4 = rhs(tk + h, &(&rho + &k3 * C64::new(h, 0.0)));
            rho += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0);
            let herm = max_abs(&(&rho - rho.adjoint()));
            result.diagnostics.hermiticity_drift = result.diagnostics.hermiticity_drift.max(herm);
            rho = (&rho + rho.adjoint()) * half;
            let drift = (rho.trace().re - trace0).abs();
            result.diagnostics.trace_drift = result.diagnostics.trace_drift.max(drift);
            if (k + 1) % stride == 0 {
                let tt = if k + 1 == steps { t0 + seg.duration } else { t0 + (k + 1) as f64 * h };
                last = record(&mut result, &rho, tt)?;
            }
        }
        t = t0 + seg.duration;
    }
    result.diagnostics.steps = steps_total;
    result.final_state = FinalState::Mixed(last);
    if result.diagnostics.trace_drift > control.trace_tolerance {
        return Err(integration_error("trace drift above tolerance", &result.diagnostics));
    }
    Ok(result)
}

/// Master equation with collective decay and dephasing.
pub fn evolve_lindblad(
    model: &HamiltonianModel,
    schedule: &PulseSchedule,
    rho0: &DensityMatrix,
    noise: &NoiseModel,
    control: &StepControl,
    targets: &[NamedTarget],
) -> Result<RunResult> {
    check_inputs(model, schedule, rho0.n_atoms(), control)?;
    let frame = Frame::new(model);
    let jumps: Vec<CMatrix> = noise
        .jump_operators(model.n_atoms())?
        .iter()
        .map(|l| frame.to_eigen_mat(l))
        .collect();
    let jumps_dag: Vec<CMatrix> = jumps.iter().map(|l| l.adjoint()).collect();
    let products = jumps.iter().map(|l| l.adjoint() * l).collect();
    let diss = Dissipator {
        jumps,
        jumps_dag,
        products,
    };
    let coarse = mixed_pass(&frame, schedule, rho0, &diss, targets, control, 1)?;
    if !control.verify_halving {
        return Ok(coarse);
    }
    let mut fine = mixed_pass(&frame, schedule, rho0, &diss, targets, control, 2)?;
    fine.diagnostics.halving_delta = fine.max_deviation(&coarse);
    if fine.diagnostics.halving_delta > control.halving_tolerance {
        return Err(integration_error("step halving changed the result", &fine.diagnostics));
    }
    Ok(fine)
}

/// `Σ_a ⟨P_a⟩` deviation from one over a run.
pub fn population_sum_defect(result: &RunResult) -> f64 {
    result
        .populations
        .iter()
        .map(|p| (p.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max)
}
