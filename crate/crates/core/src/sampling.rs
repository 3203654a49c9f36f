//! Seeded random ensembles of cubics and matrices.
//!
//! ChaCha8 is a counter-based stream, so a 64-bit seed yields the same
//! ensemble on every platform.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::eigen3::Matrix3;
use crate::poly::CubicPoly;

pub const ANNULUS_MIN: f64 = 0.1;
pub const ANNULUS_MAX: f64 = 10.0;
pub const MIN_SEPARATION: f64 = 1e-3;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Modulus log-uniform in `[rmin, rmax]`, argument uniform.
    pub fn annulus_point(&mut self, rmin: f64, rmax: f64) -> Complex {
        let r = (self.uniform(rmin.ln(), rmax.ln())).exp();
        Complex::from_polar(r, self.uniform(0.0, TAU))
    }

    /// Uniform in the closed unit disk.
    pub fn disk_point(&mut self) -> Complex {
        let r = self.uniform(0.0, 1.0).sqrt();
        Complex::from_polar(r, self.uniform(0.0, TAU))
    }

    /// A standard complex Gaussian-ish point, used for shifts and scalings.
    pub fn box_point(&mut self, half_width: f64) -> Complex {
        Complex::new(self.uniform(-half_width, half_width), self.uniform(-half_width, half_width))
    }

    /// Three roots in the annulus with pairwise separation `>= min_sep * max(1, max|root|)`.
    pub fn separated_roots(&mut self, min_sep: f64) -> [Complex; 3] {
        loop {
            let r = [(); 3].map(|_| self.annulus_point(ANNULUS_MIN, ANNULUS_MAX));
            let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
            let ok = (r[0] - r[1]).norm() >= min_sep * scale
                && (r[0] - r[2]).norm() >= min_sep * scale
                && (r[1] - r[2]).norm() >= min_sep * scale;
            if ok {
                return r;
            }
        }
    }

    /// Roots `[x, x, y]` with `x`, `y` on a dyadic grid (step 1/8, modulus in
    /// the annulus) so that the cubic's coefficients are exact in binary
    /// floating point and the double root survives rounding.
    pub fn grid_double_roots(&mut self) -> [Complex; 3] {
        loop {
            let x = self.grid_point();
            let y = self.grid_point();
            let scale = x.norm().max(y.norm()).max(1.0);
            if (x - y).norm() >= 0.25 * scale {
                return [x, x, y];
            }
        }
    }

    /// `[x, x, x]` on the dyadic grid.
    pub fn grid_triple_roots(&mut self) -> [Complex; 3] {
        let x = self.grid_point();
        [x, x, x]
    }

    fn grid_point(&mut self) -> Complex {
        loop {
            let z = self.annulus_point(0.5, ANNULUS_MAX);
            let g = Complex::new((z.re * 8.0).round() / 8.0, (z.im * 8.0).round() / 8.0);
            if g.norm() >= ANNULUS_MIN && g.norm() <= ANNULUS_MAX {
                return g;
            }
        }
    }

    pub fn random_cubic(&mut self) -> ([Complex; 3], CubicPoly) {
        let r = self.separated_roots(MIN_SEPARATION);
        (r, CubicPoly::from_roots(r))
    }

    /// Entries uniform in the unit disk.
    pub fn random_matrix(&mut self) -> Matrix3 {
        Matrix3::from_rows([[(); 3].map(|_| self.disk_point()), [(); 3].map(|_| self.disk_point()), [(); 3].map(|_| self.disk_point())])
    }

    /// A random matrix with singular values in `[1, 10]`: product of two
    /// Householder-like unitary factors around a diagonal.
    pub fn well_conditioned_matrix(&mut self) -> Matrix3 {
        let u = self.random_unitary();
        let v = self.random_unitary();
        let s = [1.0, self.uniform(1.0, 10.0), 10.0];
        let mut diag = Matrix3::zero();
        for (k, sk) in s.iter().enumerate() {
            diag.set(k, k, Complex::new(*sk, 0.0));
        }
        u.mul(&diag).mul(&v)
    }

    fn random_unitary(&mut self) -> Matrix3 {
        // Householder reflector I - 2 w w^H / |w|^2 from a random w
        let w = [(); 3].map(|_| self.box_point(1.0));
        let n2: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        let mut h = Matrix3::identity();
        for i in 0..3 {
            for j in 0..3 {
                h.set(i, j, h.get(i, j) - w[i] * w[j].conj() * (2.0 / n2));
            }
        }
        h
    }
}

/// FNV-1a over the bit patterns of a sequence of floats.
pub fn fingerprint<I: IntoIterator<Item = f64>>(values: I) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in values {
        for byte in v.to_bits().to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

pub fn cubic_fingerprint(polys: &[CubicPoly]) -> u64 {
    fingerprint(polys.iter().flat_map(|p| [p.b.re, p.b.im, p.c.re, p.c.im, p.d.re, p.d.im]))
}
