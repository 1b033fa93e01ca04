// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use rydberg_wghz::dynamics::*;
use rydberg_wghz::geometry::PotentialTable;
use rydberg_wghz::hamiltonians::*;
use rydberg_wghz::linalg::{commutator, hermitian_eigen, max_abs, C64};
use rydberg_wghz::schemes::*;
use rydberg_wghz::states::*;
use rydberg_wghz::Result;

#[derive(Default)]
struct Hygiene {
    runs: usize,
    norm: f64,
    trace: f64,
    halving: f64,
}

impl Hygiene {
    fn add(&mut self, d: &RunDiagnostics) {
        self.runs += 1;
        self.norm = self.norm.max(d.norm_drift);
        self.trace = self.trace.max(d.trace_drift);
        self.halving = self.halving.max(d.halving_delta);
    }
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Result<Verdict> {
    Ok(Verdict { pass, detail })
}

fn chiral_prep(h: &mut Hygiene) -> Result<Verdict> {
    let run = prepare_twisted_w(2.0 * PI / 3.0, 1.0, 3000.0, &StepControl::default())?;
    h.add(&run.result.diagnostics);
    let f = run.result.final_fidelity("zeta1+").unwrap_or(0.0);
    let theta_ok = (run.alignment.theta_k - (1.0f64 / 3.0).asin()).abs() < 1e-15;
    let rabi_ok = (run.rabi - PI / (2.0 * 3f64.sqrt())).abs() < 1e-15;
    verdict(
        f >= 0.99 && theta_ok && rabi_ok,
        format!("F(zeta1+) = {f:.7} at T (need >= 0.99)"),
    )
}

fn prep_curve() -> Result<Verdict> {
    let rows = prep_fidelity_curve(&[0.0, (1.0f64 / 3.0).asin(), (2.0f64 / 3.0).asin()])?;
    let errs = [
        (rows[0].f_zeta10 - 1.0).abs(),
        (rows[1].f_zeta_plus - 1.0).abs(),
        (rows[2].f_zeta_minus - 1.0).abs(),
    ];
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    verdict(worst < 1e-10, format!("max |F - 1| = {worst:.2e} over the three peaks (need < 1e-10)"))
}

fn zeta20_pathway(h: &mut Hygiene) -> Result<Verdict> {
    let opts = ConversionOptions { window: 1.0, ..ConversionOptions::default() };
    let run = convert_w_to_ghz(ZetaAlignment::Aligned, &opts)?;
    h.add(&run.result.diagnostics);
    let areas = reference_pulse_areas();
    let rabi_ok = run.rabis.iter().zip(areas).all(|(r, a)| (r.re - a).abs() < 1e-15 && r.im == 0.0);
    let leak = ["zeta2+", "zeta2-"]
        .iter()
        .filter_map(|n| run.result.fidelity_trace(n))
        .flat_map(|t| t.iter().copied())
        .fold(0.0, f64::max);
    let f = run.fidelity_at_conversion;
    verdict(
        f >= 0.99 && leak < 1e-3 && rabi_ok,
        format!("F_GHZ(T0) = {f:.7} (need >= 0.99), max P(zeta2+-) = {leak:.2e} (need < 1e-3)"),
    )
}

fn pathway_ordering(h: &mut Hygiene) -> Result<Verdict> {
    let opts = ConversionOptions::default();
    let a = convert_w_to_ghz(ZetaAlignment::Aligned, &opts)?;
    let b = convert_w_to_ghz(ZetaAlignment::ZetaMinus, &opts)?;
    h.add(&a.result.diagnostics);
    h.add(&b.result.diagnostics);
    let (ta, fa) = a.peak();
    let (tb, fb) = b.peak();
    let de = ((a.pulse_energy - b.pulse_energy) / a.pulse_energy).abs();
    verdict(
        de < 1e-12 && tb > ta,
        format!(
            "peaks at {ta:.4} (F={fa:.5}) and {tb:.4} (F={fb:.5}), ratio {:.4}; energy mismatch {de:.1e}",
            tb / ta
        ),
    )
}

fn open_system(h: &mut Hygiene) -> Result<Verdict> {
    let noise = NoiseModel::new(0.1, 0.1)?;
    let mut f = Vec::new();
    for pathway in [ZetaAlignment::Aligned, ZetaAlignment::ZetaMinus] {
        let base = ConversionOptions { window: 1.0, ..ConversionOptions::default() };
        let closed = convert_w_to_ghz(pathway, &base)?;
        let open = convert_w_to_ghz(pathway, &ConversionOptions { noise: Some(noise), ..base })?;
        h.add(&closed.result.diagnostics);
        h.add(&open.result.diagnostics);
        f.push((closed.result.final_fidelity("ghz").unwrap_or(0.0), open.result.final_fidelity("ghz").unwrap_or(1.0)));
    }
    let pass = f[0].1 < f[0].0 && f[1].1 < f[1].0 && f[0].1 > f[1].1;
    verdict(
        pass,
        format!(
            "zeta20 {:.4} vs unitary {:.5}; zeta2- {:.4} vs unitary {:.5}",
            f[0].1, f[0].0, f[1].1, f[1].0
        ),
    )
}

fn monte_carlo(h: &mut Hygiene) -> Result<Verdict> {
    let grid = theta_grid(0.0, 0.1, 11);
    let s = positional_monte_carlo(&grid, 500, 20260101, &MonteCarloOptions::default())?;
    h.runs += grid.len() * 500;
    h.norm = h.norm.max(s.max_norm_drift);
    h.halving = h.halving.max(s.max_halving_delta);
    let worst = s.rows.iter().map(|r| r.mean).fold(f64::INFINITY, f64::min);
    let table: Vec<String> = s
        .rows
        .iter()
        .map(|r| format!("{:.2}:{:.4}+-{:.4}", r.sigma, r.mean, r.stderr))
        .collect();
    verdict(
        worst > 0.9 && s.rows.iter().all(|r| r.samples == 500),
        format!("min mean {worst:.4} (need > 0.9); sigma:mean+-SE {}", table.join(" ")),
    )
}

fn pipeline(h: &mut Hygiene) -> Result<Verdict> {
    let opts = PipelineOptions::default();
    let mut runs = Vec::new();
    for s in [0.0, 0.5, 0.75] {
        let r = twisted_ladder_pipeline(s, &opts)?;
        h.add(&r.result.diagnostics);
        runs.push(r);
    }
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, ratio) in runs.iter().zip([1.0, 2.25, 9.0]) {
        let p = r.result.final_populations();
        pass &= (p[0] - 0.5).abs() <= 0.02 && (p[3] - 0.5).abs() <= 0.02;
        pass &= (r.prep_time / runs[0].prep_time - ratio).abs() < 1e-12;
        pass &= (r.total_time / runs[0].total_time - ratio).abs() < 1e-12;
        pass &= ((r.pulse_energy - runs[0].pulse_energy) / runs[0].pulse_energy).abs() < 1e-12;
        parts.push(format!(
            "|S|={:.0}: P0={:.4} P3={:.4} T={:.3}",
            r.sigma_abs[0], p[0], p[3], r.total_time
        ));
    }
    verdict(pass, parts.join("; "))
}

fn oracle() -> Result<Verdict> {
    let drive = LightShiftDrive::from_s0(-1247.0, -0.03, -0.7)?;
    let shifts = drive.shifts(3, 1.0)?;
    let grid: Vec<f64> = (0..=20_000).map(|k| k as f64 / 20_000.0).collect();
    let mut worst: f64 = 0.0;
    for s in [0.0, 0.5, 0.75] {
        let (f0, fields) = pipeline_fields(s, &drive, &shifts, [12.0, 9.0, 15.0])?;
        let tl = h_twisted_ladder(&f0, &fields, &shifts, DEFAULT_SIGMA_FLOOR)?;
        let avg = rotated_ladder_oracle(&f0, &fields, &shifts, &grid)?;
        let scale = max_abs(tl.matrix.matrix());
        worst = worst.max(max_abs(&(avg.matrix() - tl.matrix.matrix())) / scale);
    }
    verdict(
        worst < 0.02 && (shifts.s0() + 1247.0).abs() < 1e-9,
        format!("max element deviation {:.3}% of the largest coupling (need < 2%)", 100.0 * worst),
    )
}

fn structural() -> Result<Verdict> {
    let start = Instant::now();
    let mut failed = Vec::new();

    let chi = chirality_operator();
    let (vals, _) = hermitian_eigen(chi.matrix());
    let spectrum = [-1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0];
    let mut ok = vals.iter().zip(spectrum).all(|(v, e)| (v - e).abs() < 1e-12);
    for (name, z) in zeta_basis() {
        let out = chi.matrix() * z.amplitudes();
        let want = if name.ends_with('+') {
            1.0
        } else if name.ends_with('-') {
            -1.0
        } else {
            0.0
        };
        ok &= (&out - z.amplitudes() * C64::new(want, 0.0)).norm() < 1e-12;
    }
    if !ok {
        failed.push("chirality");
    }

    let light = EnergyShifts::trimer(-1247.0, -513.47, -323.3);
    let phases = [0.4, -1.3, 2.2];
    let f0 = LaserField::new(0, C64::new(1.0, 0.0), phases.to_vec());
    let general = h_off_resonant(3, &f0, &light)?;
    let explicit = h_off_resonant_trimer(&phases, &light)?;
    if max_abs(&(general.matrix() - explicit.matrix())) >= 1e-12 * 1247.0 {
        failed.push("light-shift forms");
    }

    let ha = h_atomic(3, 1.7e4, &PotentialTable::uniform(3, 2.0e6))?;
    if max_abs(&commutator(ha.matrix(), general.matrix())) >= 1e-10 * 2.0e6 {
        failed.push("[H_A, H_off]");
    }

    let tw = [0.1, 0.9, -0.4];
    let fields: Vec<LaserField> = (0..3)
        .map(|j| {
            LaserField::new(j + 1, C64::new(0.3 + 0.1 * j as f64, -0.2), tw.to_vec())
                .with_detuning(j as f64 * 50.0, 0.0)
        })
        .collect();
    let hl = h_ladder(3, &fields, 50.0)?;
    let pd = dicke_projector(3, &tw)?;
    let id = rydberg_wghz::linalg::CMatrix::identity(8, 8);
    if max_abs(&((id - pd.matrix()) * hl.matrix() * pd.matrix())) >= 1e-12 {
        failed.push("Dicke invariance");
    }

    for n in [3usize, 4] {
        for a in 1..=n {
            let lower = build_dicke(n, a - 1)?;
            let upper = build_dicke(n, a)?;
            let amp = sigma_plus(n, a)?.element(&upper, &lower);
            if (amp - C64::new(((a * (n - a + 1)) as f64).sqrt(), 0.0)).norm() >= 1e-12 {
                failed.push("ladder coefficients");
            }
        }
    }

    let rabis = vec![C64::new(1.3, 0.4), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    let drive: Vec<LaserField> = rabis
        .iter()
        .enumerate()
        .map(|(j, &o)| LaserField::new(j + 1, o, vec![0.2, -0.5, 1.1]))
        .collect();
    let model = h_full_driven(&drive, &PotentialTable::uniform(3, 7.0), Frame::Rotating)?;
    let sched = PulseSchedule::constant(2.0, rabis)?;
    let noise = NoiseModel::new(0.3, 0.2)?;
    let rho0 = StateVector::ground(3)?.to_density();
    let run = evolve_lindblad(&model, &sched, &rho0, &noise, &StepControl::default(), &[])?;
    let exact = common::superoperator_evolve(
        &model.evaluate(0.0).into_matrix(),
        &noise.jump_operators(3)?,
        rho0.matrix(),
        2.0,
    );
    match &run.final_state {
        FinalState::Mixed(rho) if common::max_abs_diff(rho.matrix(), &exact) < 1e-7 => {}
        _ => failed.push("Lindblad vs superoperator"),
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = failed.is_empty() && elapsed < 1.0;
    let detail = if failed.is_empty() {
        format!("all six checks hold in {elapsed:.3} s (need < 1 s)")
    } else {
        format!("failed: {} ({elapsed:.3} s)", failed.join(", "))
    };
    verdict(pass, detail)
}

fn main() {
    let mut hygiene = Hygiene::default();
    type Check<'a> = (&'a str, Box<dyn FnOnce(&mut Hygiene) -> Result<Verdict>>);
    let checks: Vec<Check> = vec![
        ("chiral W preparation", Box::new(chiral_prep)),
        ("preparation curves", Box::new(|_| prep_curve())),
        ("zeta20 pathway", Box::new(zeta20_pathway)),
        ("pathway ordering", Box::new(pathway_ordering)),
        ("open-system runs", Box::new(open_system)),
        ("Monte Carlo robustness", Box::new(monte_carlo)),
        ("twisted-ladder pipeline", Box::new(pipeline)),
        ("effective-theory oracle", Box::new(|_| oracle())),
        ("structural properties", Box::new(|_| structural())),
    ];
    let mut failures = 0;
    for (i, (name, check)) in checks.into_iter().enumerate() {
        let start = Instant::now();
        let v = check(&mut hygiene).unwrap_or_else(|e| Verdict { pass: false, detail: format!("error: {e}") });
        if !v.pass {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {} [{:.1} s]",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    let pass = hygiene.norm < 1e-9 && hygiene.trace < 1e-7 && hygiene.halving < 1e-6;
    if !pass {
        failures += 1;
    }
    println!(
        "{} 10 numerical hygiene: {} runs, norm drift {:.1e} (< 1e-9), trace drift {:.1e} (< 1e-7), halving change {:.1e} (< 1e-6)",
        if pass { "PASS" } else { "FAIL" },
        hygiene.runs,
        hygiene.norm,
        hygiene.trace,
        hygiene.halving
    );
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
