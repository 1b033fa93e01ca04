// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use proptest::prelude::*;
use rydberg_wghz::geometry::*;

fn wrap(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

#[test]
fn triangle_has_equal_sides() {
    let t = triangle_array(40.0).unwrap();
    for (_, _, d) in t.pair_distances() {
        assert!((d - 40.0).abs() < 1e-12);
    }
    assert!(t.centroid().norm() < 1e-12);
}

#[test]
fn coincident_atoms_are_rejected() {
    let x = Vec3::new(1.0, 0.0, 0.0);
    assert!(AtomArray::new(vec![x, x]).is_err());
    assert!(triangle_array(0.0).is_err());
}

#[test]
fn twist_examples() {
    let atoms = triangle_array(2.0).unwrap();
    for (phi, want) in [
        (0.0, [0.0, 0.0, 0.0]),
        (2.0 * PI / 3.0, [-2.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0]),
        (-2.0 * PI / 3.0, [2.0 * PI / 3.0, 0.0, -2.0 * PI / 3.0]),
    ] {
        let a = LaserAlignment::for_twist(phi).unwrap();
        let got = site_phases(&a, &atoms);
        for (g, w) in got.iter().zip(want) {
            assert!(wrap(g - w).abs() < 1e-12, "Φ = {phi}: {got:?}");
        }
    }
    let a = LaserAlignment::for_twist(-2.0 * PI / 3.0).unwrap();
    assert!((a.theta_k - (2.0f64 / 3.0).asin()).abs() < 1e-15);
    assert!(LaserAlignment::for_twist(2.0 * PI + 1e-9).is_err());
}

#[test]
fn overlap_sum_for_pipeline_alignments() {
    let p0 = [0.0; 3];
    for (s, want) in [(0.0, 3.0), (0.5, 2.0), (0.75, 1.0), (1.0, 0.0)] {
        let a = LaserAlignment::new((s / 3.0f64).asin(), PI / 2.0);
        let ph = triangle_site_phases(&a, 2.0);
        let sigma = sigma_overlap(&ph, &p0).unwrap();
        assert!((sigma.norm() - want).abs() < 1e-12, "s = {s}: {sigma}");
    }
}

#[test]
fn potentials_scale_as_inverse_sixth_power() {
    let t = triangle_array(40.0).unwrap();
    let v = potentials(&t, 30.86, 40.0).unwrap();
    assert!((v.get(0, 1) - 30.86).abs() < 1e-12);
    let far = triangle_array(80.0).unwrap();
    let w = potentials(&far, 30.86, 40.0).unwrap();
    assert!((w.get(1, 2) - 30.86 / 64.0).abs() < 1e-12);
    let c6 = potentials_from_c6(&triangle_array(2.0).unwrap().with_c6(64.0)).unwrap();
    assert!((c6.get(0, 2) - 1.0).abs() < 1e-12);
    assert!(potentials_from_c6(&t).is_err());
}

#[test]
fn interaction_energy_is_pair_sum() {
    let mut t = triangle_array(40.0).unwrap();
    t = perturb(&t, 0.05, &mut substream(3, 0)).unwrap();
    let v = potentials(&t, 30.86, 40.0).unwrap();
    assert!((v.code_energy(0b011) - v.get(0, 1)).abs() < 1e-15);
    let all = v.get(0, 1) + v.get(0, 2) + v.get(1, 2);
    assert!((v.code_energy(0b111) - all).abs() < 1e-12);
    assert!(v.get(0, 1) != v.get(0, 2) && v.get(0, 2) != v.get(1, 2));
}

#[test]
fn perturbation_is_seed_deterministic() {
    let t = triangle_array(40.0).unwrap();
    let a = perturb(&t, 0.1, &mut substream(42, 7)).unwrap();
    let b = perturb(&t, 0.1, &mut substream(42, 7)).unwrap();
    let c = perturb(&t, 0.1, &mut substream(42, 8)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(perturb(&t, 0.0, &mut substream(1, 1)).unwrap(), t);
    assert!(perturb(&t, -0.1, &mut substream(1, 1)).is_err());
}

#[test]
fn perturbation_spread_matches_sigma() {
    let t = triangle_array(40.0).unwrap();
    let mut rng = substream(9, 0);
    let sigma = 0.1;
    let mut acc = Vec::new();
    for _ in 0..2000 {
        let p = perturb(&t, sigma, &mut rng).unwrap();
        for (x, x0) in p.positions().iter().zip(t.positions()) {
            acc.extend((x - x0).iter().copied());
        }
    }
    let n = acc.len() as f64;
    let var = acc.iter().map(|x| x * x).sum::<f64>() / n;
    assert!((var.sqrt() - sigma).abs() < 0.005 * 3.0, "{}", var.sqrt());
}

proptest! {
    #[test]
    fn closed_form_phases_match_k_dot_x(theta in 0.0..PI / 2.0, phi_k in -PI..PI, side in 0.5f64..50.0) {
        let a = LaserAlignment::new(theta, phi_k);
        let direct = site_phases(&a, &triangle_array(side).unwrap());
        let closed = triangle_site_phases(&a, side);
        for (x, y) in direct.iter().zip(&closed) {
            prop_assert!((x - y).abs() < 1e-9 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn rigid_motion_preserves_distances(ax in -PI..PI, ay in -PI..PI, sx in -5.0f64..5.0) {
        let t = triangle_array(3.0).unwrap();
        let rot = nalgebra::Rotation3::from_euler_angles(ax, ay, 0.3);
        let moved = t.transformed(&rot, &Vec3::new(sx, 1.0, -2.0));
        for ((_, _, d0), (_, _, d1)) in t.pair_distances().iter().zip(moved.pair_distances()) {
            prop_assert!((d0 - d1).abs() < 1e-12);
        }
    }

    #[test]
    fn overlap_magnitude_is_bounded(ph in prop::collection::vec(-PI..PI, 3)) {
        let s = sigma_overlap(&ph, &[0.0; 3]).unwrap();
        prop_assert!(s.norm() <= 3.0 + 1e-12);
        prop_assert!((sigma_overlap(&ph, &ph).unwrap().re - 3.0).abs() < 1e-12);
    }
}
