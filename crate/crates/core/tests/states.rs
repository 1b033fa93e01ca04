// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use proptest::prelude::*;
use rydberg_wghz::linalg::{cis, hermitian_eigen, CVector, C64};
use rydberg_wghz::states::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn basis_labels_follow_bit_order() {
    let idx = BasisIndex::from_excited(3, &[0]).unwrap();
    assert_eq!(idx.code(), 1);
    assert_eq!(idx.label(), "rgg");
    assert_eq!(BasisIndex::new(3, 6).unwrap().label(), "grr");
    assert!(BasisIndex::new(3, 8).is_err());
    assert_eq!(codes_with_excitation(3, 2), vec![3, 5, 6]);
}

#[test]
fn atom_count_is_bounded() {
    assert!(StateVector::ground(0).is_err());
    assert!(StateVector::ground(MAX_ATOMS + 1).is_err());
    assert!(StateVector::ground(MAX_ATOMS).is_ok());
}

#[test]
fn chirality_spectrum_and_eigenbasis() {
    let chi = chirality_operator();
    assert!(chi.is_hermitian());
    let (vals, _) = hermitian_eigen(chi.matrix());
    let expected = [-1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0];
    for (v, e) in vals.iter().zip(expected) {
        assert!((v - e).abs() < 1e-12, "{vals:?}");
    }
    for (name, z) in zeta_basis() {
        let out = chi.matrix() * z.amplitudes();
        let lambda = z.amplitudes().dotc(&out);
        let residual = &out - z.amplitudes() * lambda;
        assert!(residual.norm() < 1e-12, "{name} is not an eigenvector");
        let want = if name.ends_with('+') {
            1.0
        } else if name.ends_with('-') {
            -1.0
        } else {
            0.0
        };
        assert!((lambda.re - want).abs() < 1e-12, "{name}: {lambda}");
    }
}

#[test]
fn zeta_basis_is_orthonormal() {
    let b = zeta_basis();
    assert_eq!(b.len(), 8);
    for (i, (_, x)) in b.iter().enumerate() {
        for (j, (_, y)) in b.iter().enumerate() {
            let o = x.inner(y).unwrap();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((o - c(want, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn chiral_w_matches_explicit_amplitudes() {
    let w = cis(2.0 * PI / 3.0);
    let r = w / w.conj();
    let explicit = build_general_w(&[r, c(1.0, 0.0), r.conj()]).unwrap();
    let z = zeta_state(1, Chirality::Plus).unwrap();
    assert!(z.equals_up_to_phase(&explicit, 1e-12));
    assert!(zeta_state(0, Chirality::Plus).is_err());
}

#[test]
fn twisted_dicke_is_twist_of_plain_dicke() {
    let phases = [0.3, -1.1, 2.0];
    let u = twist_unitary(&phases).unwrap();
    for a in 0..=3 {
        let twisted = build_twisted_dicke(3, a, &phases).unwrap();
        let rotated = build_dicke(3, a).unwrap().apply(&u).unwrap();
        assert!(twisted.equals_up_to_phase(&rotated, 1e-12));
    }
}

#[test]
fn twisted_w_at_twist_two_pi_thirds_is_zeta_plus() {
    let phi = 2.0 * PI / 3.0;
    let w = build_twisted_dicke(3, 1, &[-phi, 0.0, phi]).unwrap();
    let zp = zeta_state(1, Chirality::Plus).unwrap();
    assert!((fidelity(&w, &zp).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn ladder_coefficients_match_dicke_formula() {
    for n in [3usize, 4] {
        for a in 1..=n {
            let lower = build_dicke(n, a - 1).unwrap();
            let upper = build_dicke(n, a).unwrap();
            let sp = sigma_plus(n, a).unwrap();
            let amp = sp.element(&upper, &lower);
            let want = ((a * (n - a + 1)) as f64).sqrt();
            assert!((amp - c(want, 0.0)).norm() < 1e-12, "N={n} a={a}: {amp}");
            let sm = sigma_minus(n, a).unwrap();
            assert!((sm.element(&lower, &upper) - c(want, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn ghz_and_density_fidelity() {
    let g = build_ghz(3, 0.7).unwrap();
    assert!((g.amplitude(7) - cis(0.7) / 2f64.sqrt()).norm() < 1e-12);
    let rho = g.to_density();
    assert!((fidelity(&rho, &g).unwrap() - 1.0).abs() < 1e-12);
    assert!((rho.trace() - 1.0).abs() < 1e-12);
    let p = rho.sector_populations();
    assert!((p[0] - 0.5).abs() < 1e-12 && (p[3] - 0.5).abs() < 1e-12);
}

#[test]
fn density_matrix_validation() {
    let m = rydberg_wghz::linalg::CMatrix::from_diagonal(&CVector::from_vec(vec![
        c(1.2, 0.0),
        c(-0.2, 0.0),
    ]));
    assert!(DensityMatrix::from_matrix(1, m).is_err());
}

fn arb_state(n: usize) -> impl Strategy<Value = StateVector> {
    let d = 1usize << n;
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(move |v| {
            let amps = CVector::from_iterator(d, v.into_iter().map(|(a, b)| c(a, b)));
            StateVector::from_amplitudes(n, amps).unwrap()
        })
}

proptest! {
    #[test]
    fn fidelity_is_bounded_and_phase_blind(psi in arb_state(3), tgt in arb_state(3), theta in -PI..PI) {
        let f = fidelity(&psi, &tgt).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        let shifted = StateVector::from_amplitudes(3, psi.amplitudes() * cis(theta)).unwrap();
        prop_assert!((fidelity(&shifted, &tgt).unwrap() - f).abs() < 1e-12);
        prop_assert!((fidelity(&psi, &psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_and_mixed_fidelity_agree(psi in arb_state(3), tgt in arb_state(3)) {
        let a = fidelity(&psi, &tgt).unwrap();
        let b = fidelity(&psi.to_density(), &tgt).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn sector_populations_sum_to_one(psi in arb_state(4)) {
        let p = psi.sector_populations();
        prop_assert_eq!(p.len(), 5);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn twisted_dicke_states_are_normalized(phases in prop::collection::vec(-PI..PI, 4), a in 0usize..=4) {
        let s = build_twisted_dicke(4, a, &phases).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
        prop_assert!((s.sector_populations()[a] - 1.0).abs() < 1e-12);
    }
}
