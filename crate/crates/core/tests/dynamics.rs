// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

mod common;

use proptest::prelude::*;
use rydberg_wghz::dynamics::*;
use rydberg_wghz::geometry::PotentialTable;
use rydberg_wghz::hamiltonians::*;
use rydberg_wghz::linalg::{unitary_propagator, CMatrix, C64};
use rydberg_wghz::schemes::pathway_pulse;
use rydberg_wghz::states::*;
use rydberg_wghz::Error;

fn single_atom(rabi: f64, detuning: f64) -> HamiltonianModel {
    let f = LaserField::new(1, C64::new(rabi, 0.0), vec![0.0]).with_detuning(detuning, 0.0);
    h_full_driven(&[f], &PotentialTable::zero(1), Frame::Rotating).unwrap()
}

#[test]
fn resonant_rabi_oscillation() {
    let om = 2.3;
    let model = single_atom(om, 0.0);
    let sched = PulseSchedule::constant(3.0, vec![C64::new(om, 0.0)]).unwrap();
    let r = evolve_pure(&model, &sched, &StateVector::ground(1).unwrap(), &StepControl::default(), &[]).unwrap();
    for (t, p) in r.times.iter().zip(&r.populations) {
        assert!((p[1] - (om * t).sin().powi(2)).abs() < 1e-9, "t = {t}");
    }
    assert!(r.diagnostics.norm_drift < 1e-9);
    assert!(r.diagnostics.halving_delta < 1e-6);
}

#[test]
fn detuned_rabi_oscillation() {
    let (om, det) = (1.0, 3.0);
    let model = single_atom(om, det);
    let sched = PulseSchedule::constant(4.0, vec![C64::new(om, 0.0)]).unwrap();
    let r = evolve_pure(&model, &sched, &StateVector::ground(1).unwrap(), &StepControl::default(), &[]).unwrap();
    let w = (om * om + det * det / 4.0).sqrt();
    for (t, p) in r.times.iter().zip(&r.populations) {
        let want = om * om / (w * w) * (w * t).sin().powi(2);
        assert!((p[1] - want).abs() < 1e-9, "t = {t}");
    }
}

fn trimer_model(v: f64) -> (HamiltonianModel, PulseSchedule) {
    let rabis = vec![C64::new(1.3, 0.4), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    let fields: Vec<LaserField> = rabis
        .iter()
        .enumerate()
        .map(|(j, &o)| LaserField::new(j + 1, o, vec![0.2, -0.5, 1.1]))
        .collect();
    let model = h_full_driven(&fields, &PotentialTable::uniform(3, v), Frame::Rotating).unwrap();
    let sched = PulseSchedule::constant(2.0, rabis).unwrap();
    (model, sched)
}

#[test]
fn constant_hamiltonian_matches_matrix_exponential() {
    let (model, sched) = trimer_model(7.0);
    let psi0 = StateVector::ground(3).unwrap();
    let r = evolve_pure(&model, &sched, &psi0, &StepControl::default(), &[]).unwrap();
    let h = model.evaluate(0.0).into_matrix();
    let exact = unitary_propagator(&h, 2.0) * psi0.amplitudes();
    let rk = common::rk4_constant(&h, &CMatrix::from_column_slice(8, 1, psi0.amplitudes().as_slice()), 2.0, 20_000);
    let FinalState::Pure(psi) = &r.final_state else { panic!("pure run") };
    assert!((psi.amplitudes() - &exact).norm() < 1e-9);
    assert!((exact - rk.column(0)).norm() < 1e-9);
}

#[test]
fn lindblad_matches_superoperator_exponential() {
    let (model, sched) = trimer_model(7.0);
    let noise = NoiseModel::new(0.3, 0.2).unwrap();
    let rho0 = StateVector::ground(3).unwrap().to_density();
    let r = evolve_lindblad(&model, &sched, &rho0, &noise, &StepControl::default(), &[]).unwrap();
    let h = model.evaluate(0.0).into_matrix();
    let jumps = noise.jump_operators(3).unwrap();
    let exact = common::superoperator_evolve(&h, &jumps, rho0.matrix(), 2.0);
    let FinalState::Mixed(rho) = &r.final_state else { panic!("mixed run") };
    assert!(common::max_abs_diff(rho.matrix(), &exact) < 1e-7);
    assert!(r.diagnostics.trace_drift < 1e-7);
}

#[test]
fn noiseless_lindblad_reproduces_pure_dynamics() {
    let (model, sched) = trimer_model(3.0);
    let psi0 = zeta_state(1, Chirality::Zero).unwrap();
    let tgt = [NamedTarget::fixed("w", psi0.clone())];
    let a = evolve_pure(&model, &sched, &psi0, &StepControl::default(), &tgt).unwrap();
    let b = evolve_lindblad(&model, &sched, &psi0.to_density(), &NoiseModel::none(), &StepControl::default(), &tgt).unwrap();
    assert_eq!(a.times, b.times);
    for (x, y) in a.fidelities[0].iter().zip(&b.fidelities[0]) {
        assert!((x - y).abs() < 1e-8);
    }
}

#[test]
fn decay_lowers_the_excited_population() {
    let model = single_atom(0.0, 0.0);
    let sched = PulseSchedule::constant(1.5, vec![C64::new(0.0, 0.0)]).unwrap();
    let rho0 = StateVector::all_excited(1).unwrap().to_density();
    let r = evolve_lindblad(&model, &sched, &rho0, &NoiseModel::new(0.8, 0.0).unwrap(), &StepControl::default(), &[]).unwrap();
    for (t, p) in r.times.iter().zip(&r.populations) {
        assert!((p[1] - (-0.8 * t).exp()).abs() < 1e-9);
    }
}

#[test]
fn rotating_target_follows_blockade_phases() {
    let v = 40.0;
    let fields: Vec<LaserField> = (0..3).map(|j| LaserField::new(j + 1, C64::new(0.0, 0.0), vec![0.0; 3])).collect();
    let pot = PotentialTable::uniform(3, v);
    let model = h_full_driven(&fields, &pot, Frame::Rotating).unwrap();
    let sched = PulseSchedule::constant(1.0, vec![C64::new(0.0, 0.0); 3]).unwrap();
    let ghz = build_ghz(3, 0.4).unwrap();
    let tg = [
        NamedTarget::new("rot", Target::rotating(ghz.clone(), &pot)),
        NamedTarget::fixed("fixed", ghz.clone()),
    ];
    let r = evolve_pure(&model, &sched, &ghz, &StepControl::default(), &tg).unwrap();
    for (k, &t) in r.times.iter().enumerate() {
        assert!((r.fidelities[0][k] - 1.0).abs() < 1e-12);
        assert!((r.fidelities[1][k] - (1.5 * v * t).cos().abs()).abs() < 1e-9);
    }
}

#[test]
fn schedule_bookkeeping() {
    let s = PulseSchedule::constant(1.0, vec![C64::new(2.0, 0.0)])
        .unwrap()
        .then(0.5, vec![C64::new(0.0, 1.0)])
        .unwrap();
    assert_eq!(s.total_time(), 1.5);
    assert!((s.energy_until(1.25) - (4.0 + 0.25)).abs() < 1e-15);
    assert!((pulse_energy(&s) - 4.5).abs() < 1e-15);
    assert!(PulseSchedule::constant(-1.0, vec![C64::new(1.0, 0.0)]).is_err());
    assert!(s.then(1.0, vec![C64::new(1.0, 0.0); 2]).is_err());
}

#[test]
fn segment_boundaries_are_recorded() {
    let (model, _) = trimer_model(5.0);
    let sched = PulseSchedule::constant(0.37, vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)])
        .unwrap()
        .then(0.91, vec![C64::new(0.5, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)])
        .unwrap();
    let r = evolve_pure(&model, &sched, &StateVector::ground(3).unwrap(), &StepControl::default(), &[]).unwrap();
    assert!(r.times.iter().any(|&t| (t - 0.37).abs() < 1e-12));
    assert!((r.times.last().unwrap() - 1.28).abs() < 1e-12);
    assert!(r.times.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn coarse_steps_are_rejected() {
    let (model, sched) = trimer_model(5.0);
    let control = StepControl {
        steps_per_period: 1.0,
        min_steps_per_segment: 4,
        record_points: 2,
        ..StepControl::default()
    };
    let err = evolve_pure(&model, &sched, &StateVector::ground(3).unwrap(), &control, &[]).unwrap_err();
    assert!(matches!(err, Error::Integration(_)), "{err}");
}

#[test]
fn dimension_mismatch_is_a_domain_error() {
    let (model, sched) = trimer_model(5.0);
    let err = evolve_pure(&model, &sched, &StateVector::ground(2).unwrap(), &StepControl::default(), &[]).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

fn chain_projector(case: ZetaAlignment) -> CMatrix {
    case.chain()
        .iter()
        .map(|s| s.amplitudes() * s.amplitudes().adjoint())
        .fold(CMatrix::zeros(8, 8), |a, b| a + b)
}

/// Largest sector-population gap between the blockade model and the
/// four-level ladder, and the largest weight outside the ladder states.
fn tracking_error(v: f64) -> (f64, f64, f64) {
    let (rabis, t) = pathway_pulse(ZetaAlignment::Aligned, 1.0).unwrap();
    let fields: Vec<LaserField> = rabis
        .iter()
        .enumerate()
        .map(|(j, &o)| LaserField::new(j + 1, o, vec![0.0; 3]).with_detuning(j as f64 * v, 0.0))
        .collect();
    let model = h_full_driven(&fields, &PotentialTable::uniform(3, v), Frame::Rotating).unwrap();
    let sched = PulseSchedule::constant(t, rabis.clone()).unwrap();
    let psi0 = zeta_state(1, Chirality::Zero).unwrap();
    let control = StepControl { record_points: 100, ..StepControl::default() };
    let proj = chain_projector(ZetaAlignment::Aligned);
    let r = evolve_pure(&model, &sched, &psi0, &control, &[]).unwrap();
    let reference = evolve_pure(
        &zeta_ladder_model(&rabis, ZetaAlignment::Aligned).unwrap(),
        &sched,
        &psi0,
        &control,
        &[],
    )
    .unwrap();
    let mut gap: f64 = 0.0;
    for (a, b) in r.populations.iter().zip(&reference.populations) {
        for (x, y) in a.iter().zip(b) {
            gap = gap.max((x - y).abs());
        }
    }
    let FinalState::Pure(psi) = &r.final_state else { unreachable!() };
    let outside = (psi.amplitudes() - &proj * psi.amplitudes()).norm_squared();
    let omega = rabis.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (gap, outside, omega / v)
}

#[test]
fn blockade_model_tracks_the_zeta_ladder() {
    let (gap_a, out_a, x_a) = tracking_error(3000.0);
    let (gap_b, out_b, x_b) = tracking_error(12000.0);
    assert!(x_a <= 1.0 / 300.0);
    // Population gap: first order in Ω/V at fixed pulse area, C ≈ 2.7.
    assert!(gap_a < 4.0 * x_a && gap_b < 4.0 * x_b, "{gap_a} {gap_b}");
    assert!((gap_a / gap_b - 4.0).abs() < 0.4);
    // Weight outside the ladder: second order.
    assert!(out_a < 10.0 * x_a * x_a && out_b < 10.0 * x_b * x_b, "{out_a} {out_b}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pure_runs_conserve_norm(re in -3.0f64..3.0, im in -3.0f64..3.0, v in 1.0f64..30.0, t in 0.1f64..2.0) {
        let fields: Vec<LaserField> = (0..3)
            .map(|j| LaserField::new(j + 1, C64::new(re, im), vec![0.1 * j as f64, 0.0, -0.3]).with_detuning(j as f64 * v, 0.0))
            .collect();
        let model = h_full_driven(&fields, &PotentialTable::uniform(3, v), Frame::Rotating).unwrap();
        let sched = PulseSchedule::constant(t, vec![C64::new(re, im); 3]).unwrap();
        let r = evolve_pure(&model, &sched, &StateVector::ground(3).unwrap(), &StepControl::default(), &[]).unwrap();
        prop_assert!(r.diagnostics.norm_drift < 1e-9);
        prop_assert!(population_sum_defect(&r) < 1e-9);
    }

    #[test]
    fn lindblad_runs_stay_physical(g in 0.0f64..1.0, gd in 0.0f64..1.0, re in -2.0f64..2.0) {
        let fields: Vec<LaserField> = (0..3)
            .map(|j| LaserField::new(j + 1, C64::new(re, 0.5), vec![0.0; 3]).with_detuning(j as f64 * 5.0, 0.0))
            .collect();
        let model = h_full_driven(&fields, &PotentialTable::uniform(3, 5.0), Frame::Rotating).unwrap();
        let sched = PulseSchedule::constant(1.0, vec![C64::new(re, 0.5); 3]).unwrap();
        let rho0 = StateVector::ground(3).unwrap().to_density();
        let control = StepControl { record_points: 20, ..StepControl::default() };
        let r = evolve_lindblad(&model, &sched, &rho0, &NoiseModel::new(g, gd).unwrap(), &control, &[]).unwrap();
        prop_assert!(r.diagnostics.trace_drift < 1e-7);
        prop_assert!(r.diagnostics.min_eigenvalue > -1e-5);
        prop_assert!(population_sum_defect(&r) < 1e-7);
    }
}
