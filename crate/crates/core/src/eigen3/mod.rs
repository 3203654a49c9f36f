//! Spectrum of a general 3x3 complex matrix through the change of
//! variable `l = -(b + o sqrt(Delta_p))`, plus an audit of every
//! intermediate identity.

mod audit;
mod chain;
mod matrix;

pub use audit::{
    audit_identities, audit_identities_with, find_b_roots, AuditInstance, AuditOptions, AuditReport,
    IdentityStats, BRoot, BRoots, DEFAULT_STARTS, IDENTITIES,
};
pub use chain::{
    coeff_chain, coeff_chain_with, l_cubic, resolvent_l, solve_o, ChainOptions, CoeffChain, InjectedTypo,
};
pub use matrix::{char_poly, Matrix3};

use serde::Serialize;

use crate::cardano::cardano_reference;
use crate::complex::{self, Complex, ZERO};
use crate::error::{Error, Result};
use crate::tol;
use crate::uniform::uniform_roots;

/// The permutation similarities the spectrum may run on. The first entry
/// is the identity.
pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenTrace {
    /// Similarity `P M P^T` the pipeline actually ran on.
    pub permutation: [usize; 3],
    pub o_candidates: Vec<Complex>,
    pub chosen_o: Complex,
    pub s_l: Complex,
    pub r_l_values: [Complex; 3],
    pub b_values: [Complex; 3],
    pub sqrt_delta_p_values: [Complex; 3],
    pub eigenvalues: [Complex; 3],
    /// The same eigenvalues from the alternative (f-equation) form.
    pub alt_eigenvalues: [Complex; 3],
    /// `max |p - p_alt|`.
    pub alt_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMethod {
    Pipeline,
    FallbackUniform,
    FallbackCardano,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: [Complex; 3],
    pub method: SpectrumMethod,
    pub trace: Option<EigenTrace>,
    /// Why the pipeline was abandoned, for fallback results.
    pub fallback_reason: Option<String>,
}

impl Spectrum {
    pub fn is_fallback(&self) -> bool {
        self.method != SpectrumMethod::Pipeline
    }
}

fn band_check(quantity: &'static str, value: Complex, band: f64) -> Result<()> {
    if value.norm() <= band || !complex::is_finite(value) {
        return Err(Error::DegenerateDenominator { quantity, magnitude: value.norm(), band });
    }
    Ok(())
}

fn eigen_from_o(ch: &CoeffChain, o: Complex) -> Result<EigenTrace> {
    let scale = ch.scale;
    band_check("o", o, tol::ZERO_BAND)?;
    band_check("1 - o^2", Complex::new(1.0, 0.0) - o * o, tol::ZERO_BAND)?;
    let (s_l, r_l_values) = resolvent_l(ch, o);
    let (c1, c2, d3) = (ch.c1, ch.c2, ch.d3());
    let (n1, n4, n5, n6, n7, n9, n10) = (ch.n(1), ch.n(4), ch.n(5), ch.n(6), ch.n(7), ch.n(9), ch.n(10));
    let (r2, r6) = (ch.r(2), ch.r(6));
    let one = Complex::new(1.0, 0.0);
    let shift = ch.m1 * 2.0 - c1;

    let mut eigenvalues = [ZERO; 3];
    let mut alt = [ZERO; 3];
    let mut b_values = [ZERO; 3];
    let mut sqrt_dp = [ZERO; 3];
    for (k, &r) in r_l_values.iter().enumerate() {
        let num = d3 * r * r + n10 * (one - o) * r - n9 * o * (one - o) - d3 * c2 * o * o;
        let den = (one - o) * (n10 + n1 * o) - d3 * c1 * o * o * 2.0 + d3 * (one + o) * r;
        band_check("d-form denominator", den, tol::ZERO_BAND * scale.powi(3))?;
        let x = num / den;
        let alt_num = n6 * o * o - n5 * o + (r6 - n7 * o) * r;
        let alt_den = (n4 - n7) * o + r2 * o * o + r6 + o * r * 2.0;
        band_check("f-form denominator", alt_den, tol::ZERO_BAND * scale)?;
        let y = alt_num / alt_den;
        eigenvalues[k] = ((one + one / o) * x + shift - r / o) * 0.5;
        alt[k] = ((one + one / o) * y + shift - r / o) * 0.5;
        b_values[k] = ch.a - x;
        sqrt_dp[k] = (x - r) / o;
    }
    if !eigenvalues.iter().all(|z| complex::is_finite(*z)) {
        return Err(Error::DegenerateDenominator { quantity: "eigenvalue", magnitude: f64::NAN, band: 0.0 });
    }
    let alt_gap = (0..3).map(|k| (eigenvalues[k] - alt[k]).norm()).fold(0.0, f64::max);
    Ok(EigenTrace {
        permutation: PERMUTATIONS[0],
        o_candidates: Vec::new(),
        chosen_o: o,
        s_l,
        r_l_values,
        b_values,
        sqrt_delta_p_values: sqrt_dp,
        eigenvalues,
        alt_eigenvalues: alt,
        alt_gap,
    })
}

/// The pipeline on `M` itself, free parameter `a`, without any escape.
///
/// Each `o` candidate is tried in turn; the first one whose downstream
/// denominators clear their bands is used.
pub fn spectrum_pipeline(m: &Matrix3, a: Complex, opts: ChainOptions) -> Result<EigenTrace> {
    let ch = coeff_chain_with(m, a, opts)?;
    let candidates = solve_o(&ch)?;
    let mut last = Error::DegenerateQuadratic;
    for &o in &candidates {
        match eigen_from_o(&ch, o) {
            Ok(mut t) => {
                t.o_candidates = candidates.clone();
                return Ok(t);
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// How far the divisors of the chain for `m` sit from zero, each relative
/// to its weight: `min(|m2| / s, |d3| / s^2, |f3| / s^3)` with `s = scale(M)`.
/// Zero when the chain cannot be formed.
pub fn chain_conditioning(m: &Matrix3, a: Complex, opts: ChainOptions) -> f64 {
    match coeff_chain_with(m, a, opts) {
        Ok(ch) => {
            let s = ch.scale;
            (m.get(0, 1).norm() / s).min(ch.d3().norm() / (s * s)).min(ch.f3().norm() / (s * s * s))
        }
        Err(_) => 0.0,
    }
}

/// The pipeline on the permutation similarities of `m`, best-conditioned
/// chain first (ties keep [`PERMUTATIONS`] order). Returns the first that
/// clears every band, or the first error.
pub fn spectrum_pipeline_best(m: &Matrix3, a: Complex, opts: ChainOptions) -> Result<EigenTrace> {
    let mut order: Vec<(usize, f64)> =
        PERMUTATIONS.iter().enumerate().map(|(k, &perm)| (k, chain_conditioning(&m.permuted(perm), a, opts))).collect();
    order.sort_by(|x, y| y.1.total_cmp(&x.1));
    let mut first_error = None;
    for (k, _) in order {
        let perm = PERMUTATIONS[k];
        match spectrum_pipeline(&m.permuted(perm), a, opts) {
            Ok(mut t) => {
                t.permutation = perm;
                return Ok(t);
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.unwrap_or(Error::DegenerateQuadratic))
}

/// Spectrum with `a = 0`.
///
/// The six permutation similarities are tried best-conditioned first; a
/// small but non-zero divisor otherwise costs digits in every later step.
/// If none clears its bands, the characteristic polynomial is solved by
/// the uniform formula (or Cardano when that is degenerate too) and the
/// result is flagged.
pub fn spectrum(m: &Matrix3) -> Spectrum {
    match spectrum_pipeline_best(m, ZERO, ChainOptions::default()) {
        Ok(t) => Spectrum { eigenvalues: t.eigenvalues, method: SpectrumMethod::Pipeline, trace: Some(t), fallback_reason: None },
        Err(e) => {
            let p = char_poly(m);
            let (eigenvalues, method) = match uniform_roots(&p) {
                Ok((rs, _)) => (rs.roots, SpectrumMethod::FallbackUniform),
                Err(_) => (cardano_reference(&p).roots, SpectrumMethod::FallbackCardano),
            };
            Spectrum { eigenvalues, method, trace: None, fallback_reason: Some(e.to_string()) }
        }
    }
}
