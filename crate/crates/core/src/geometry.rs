// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Atom placement, laser alignment and interaction potentials.
//!
//! Lengths are in units of the resonance wavelength λ₀, so the free-space
//! wavenumber is 2π. The equilateral triangle puts atom 2 at azimuth 0, atom 3
//! at 2π/3 and atom 1 at 4π/3; with `φ_k = π/2` a polar tilt θ gives the site
//! phases `(−Φ, 0, +Φ)` with `Φ = 2π (d/2) sin θ`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::linalg::{cis, C64};

pub type Vec3 = Vector3<f64>;

pub const WAVENUMBER: f64 = 2.0 * PI;

#[derive(Debug, Clone, PartialEq)]
pub struct AtomArray {
    positions: Vec<Vec3>,
    c6: Option<f64>,
}

impl AtomArray {
    pub fn new(positions: Vec<Vec3>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::domain("atom array is empty"));
        }
        let arr = Self {
            positions,
            c6: None,
        };
        for (p, q, d) in arr.pair_distances() {
            if !(d > 0.0) {
                return Err(Error::Singularity(format!("atoms {p} and {q} coincide")));
            }
        }
        Ok(arr)
    }

    pub fn with_c6(mut self, c6: f64) -> Self {
        self.c6 = Some(c6);
        self
    }

    pub fn c6(&self) -> Option<f64> {
        self.c6
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn distance(&self, p: usize, q: usize) -> f64 {
        (self.positions[p] - self.positions[q]).norm()
    }

    /// `(p, q, d_pq)` for `p < q`.
    pub fn pair_distances(&self) -> Vec<(usize, usize, f64)> {
        let n = self.positions.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for p in 0..n {
            for q in p + 1..n {
                out.push((p, q, self.distance(p, q)));
            }
        }
        out
    }

    pub fn centroid(&self) -> Vec3 {
        self.positions.iter().sum::<Vec3>() / self.positions.len() as f64
    }

    /// Rigid motion `x ↦ R x + t`.
    pub fn transformed(&self, rotation: &nalgebra::Rotation3<f64>, shift: &Vec3) -> Self {
        Self {
            positions: self.positions.iter().map(|x| rotation * x + shift).collect(),
            c6: self.c6,
        }
    }
}

/// Propagation direction of a drive, in the angles used by the prep scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserAlignment {
    pub theta_k: f64,
    pub phi_k: f64,
    pub wavenumber: f64,
}

impl LaserAlignment {
    pub fn new(theta_k: f64, phi_k: f64) -> Self {
        Self {
            theta_k,
            phi_k,
            wavenumber: WAVENUMBER,
        }
    }

    /// Normal incidence on the z = 0 plane.
    pub fn normal() -> Self {
        Self::new(0.0, 0.0)
    }

    /// The tilt that puts phases `(−Φ, 0, +Φ)` on a `d = 2λ₀` triangle.
    /// Negative `Φ` is realized as `Φ + 2π`, which differs only by a
    /// multiple of 2π on the outer sites.
    pub fn for_twist(phi: f64) -> Result<Self> {
        if !(phi.abs() <= 2.0 * PI) {
            return Err(Error::domain(format!("|Φ| = {} exceeds 2π", phi.abs())));
        }
        let reduced = if phi < 0.0 { phi + 2.0 * PI } else { phi };
        Ok(Self::new((reduced / (2.0 * PI)).asin(), PI / 2.0))
    }

    pub fn k_vector(&self) -> Vec3 {
        let (st, ct) = self.theta_k.sin_cos();
        let (sp, cp) = self.phi_k.sin_cos();
        Vec3::new(st * cp, st * sp, ct) * self.wavenumber
    }
}

/// Equilateral triangle of side `d` in the z = 0 plane, centred at the origin.
pub fn triangle_array(side: f64) -> Result<AtomArray> {
    if !(side > 0.0) {
        return Err(Error::domain("triangle side must be positive"));
    }
    let radius = side / 3f64.sqrt();
    let azimuths = [4.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0];
    AtomArray::new(
        azimuths
            .iter()
            .map(|&phi| Vec3::new(radius * phi.cos(), radius * phi.sin(), 0.0))
            .collect(),
    )
}

/// `φ_n = k·x_n`.
pub fn site_phases(alignment: &LaserAlignment, atoms: &AtomArray) -> Vec<f64> {
    let k = alignment.k_vector();
    atoms.positions().iter().map(|x| k.dot(x)).collect()
}

/// Closed form for a triangle of side `d` centred at the origin:
/// `φ_n = k (d/√3) sin θ cos(φ_k − φ_n)`.
pub fn triangle_site_phases(alignment: &LaserAlignment, side: f64) -> Vec<f64> {
    let radius = side / 3f64.sqrt();
    [4.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0]
        .iter()
        .map(|&phi_n| {
            alignment.wavenumber * radius * alignment.theta_k.sin() * (alignment.phi_k - phi_n).cos()
        })
        .collect()
}

/// `Σ = Σ_n exp(i(φ_b,n − φ_a,n))`
pub fn sigma_overlap(phases_a: &[f64], phases_b: &[f64]) -> Result<C64> {
    if phases_a.len() != phases_b.len() {
        return Err(Error::domain("phase arrays differ in length"));
    }
    Ok(phases_a
        .iter()
        .zip(phases_b)
        .map(|(a, b)| cis(b - a))
        .sum())
}

/// Symmetric table of pair energies `v_pq` (units ħ/T).
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable {
    v: Vec<Vec<f64>>,
}

impl PotentialTable {
    pub fn uniform(n_atoms: usize, v: f64) -> Self {
        let mut table = vec![vec![0.0; n_atoms]; n_atoms];
        for (p, row) in table.iter_mut().enumerate() {
            for (q, x) in row.iter_mut().enumerate() {
                if p != q {
                    *x = v;
                }
            }
        }
        Self { v: table }
    }

    pub fn zero(n_atoms: usize) -> Self {
        Self::uniform(n_atoms, 0.0)
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn get(&self, p: usize, q: usize) -> f64 {
        self.v[p][q]
    }

    /// Interaction energy of the basis code: sum of `v_pq` over excited pairs.
    pub fn code_energy(&self, code: usize) -> f64 {
        let n = self.v.len();
        let mut e = 0.0;
        for p in 0..n {
            if code >> p & 1 == 0 {
                continue;
            }
            for q in p + 1..n {
                if code >> q & 1 == 1 {
                    e += self.v[p][q];
                }
            }
        }
        e
    }
}

/// `v_pq = v_ref (d_ref / d_pq)⁶`
pub fn potentials(atoms: &AtomArray, v_ref: f64, d_ref: f64) -> Result<PotentialTable> {
    if !(v_ref > 0.0) || !(d_ref > 0.0) {
        return Err(Error::domain("v_ref and d_ref must be positive"));
    }
    let n = atoms.len();
    let mut v = vec![vec![0.0; n]; n];
    for (p, q, d) in atoms.pair_distances() {
        if !(d > 0.0) {
            return Err(Error::Singularity(format!("atoms {p} and {q} coincide")));
        }
        let x = v_ref * (d_ref / d).powi(6);
        v[p][q] = x;
        v[q][p] = x;
    }
    Ok(PotentialTable { v })
}

/// Van der Waals table `C₆/d⁶` from the array's own constant.
pub fn potentials_from_c6(atoms: &AtomArray) -> Result<PotentialTable> {
    let c6 = atoms
        .c6()
        .ok_or_else(|| Error::domain("atom array carries no C6 constant"))?;
    potentials(atoms, c6, 1.0)
}

/// Shifts each of the 3N coordinates by an independent `N(0, σ²)` draw.
pub fn perturb<R: Rng + ?Sized>(atoms: &AtomArray, sigma: f64, rng: &mut R) -> Result<AtomArray> {
    if !(sigma >= 0.0) {
        return Err(Error::domain("sigma must be non-negative"));
    }
    if sigma == 0.0 {
        return Ok(atoms.clone());
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| Error::domain(e.to_string()))?;
    let positions = atoms
        .positions()
        .iter()
        .map(|x| x + Vec3::new(normal.sample(rng), normal.sample(rng), normal.sample(rng)))
        .collect();
    let mut out = AtomArray::new(positions)?;
    out.c6 = atoms.c6;
    Ok(out)
}

/// Independent generator for `(seed, stream)`; streams never overlap.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
