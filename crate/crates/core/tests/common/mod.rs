// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use rydberg_wghz::linalg::{expm, CMatrix, C64};

/// Column-stacked Liouvillian `L` with `d vec(ρ)/dt = L vec(ρ)`, assembled
/// from Kronecker products: `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`.
pub fn liouvillian(h: &CMatrix, jumps: &[CMatrix]) -> CMatrix {
    let d = h.nrows();
    let id = CMatrix::identity(d, d);
    let mi = C64::new(0.0, -1.0);
    let mut l = (id.kronecker(h) - h.transpose().kronecker(&id)) * mi;
    for j in jumps {
        let jdj = j.adjoint() * j;
        l += j.conjugate().kronecker(j);
        l -= id.kronecker(&jdj) * C64::new(0.5, 0.0);
        l -= jdj.transpose().kronecker(&id) * C64::new(0.5, 0.0);
    }
    l
}

/// `ρ(t) = unvec(e^{Lt} vec ρ₀)` by dense matrix exponential.
pub fn superoperator_evolve(h: &CMatrix, jumps: &[CMatrix], rho0: &CMatrix, t: f64) -> CMatrix {
    let d = h.nrows();
    let l = liouvillian(h, jumps) * C64::new(t, 0.0);
    let v = expm(&l) * CMatrix::from_iterator(d * d, 1, rho0.iter().copied());
    CMatrix::from_iterator(d, d, v.iter().copied())
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Plain RK4 on `ψ' = −iHψ` for constant `H`, as an independent reference.
pub fn rk4_constant(h: &CMatrix, psi: &CMatrix, t: f64, steps: usize) -> CMatrix {
    let dt = t / steps as f64;
    let mi = C64::new(0.0, -1.0);
    let f = |x: &CMatrix| h * x * mi;
    let mut y = psi.clone();
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&(&y + &k1 * C64::new(dt / 2.0, 0.0)));
        let k3 = f(&(&y + &k2 * C64::new(dt / 2.0, 0.0)));
        let k4 = f(&(&y + &k3 * C64::new(dt, 0.0)));
        y += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(dt / 6.0, 0.0);
    }
    y
}
