//! Closed-form quantities attached to a cubic `x^3 + b x^2 + c x + d`.
//!
//! Every radical of the discriminant is derived from one principal-branch
//! evaluation of `sqrt(delta_o)`; likewise `delta_l^(2/3)` is always the
//! square of the principal `delta_l^(1/3)`. With independent principal
//! branches for `sqrt(-delta_o)` and `sqrt(-3 delta_o)` the pairing between
//! `r1`, `r2`, `o` and the other fields is inconsistent on roughly half of
//! all inputs; [`FormulaVariant::AsPrinted`] keeps that behaviour for the
//! audit harness.

use serde::{Deserialize, Serialize};

use crate::algebra;
use crate::complex::{self, Complex, CBRT_4, I, SQRT_3, SQRT_NEG_3};
use crate::errata::{Erratum, Formulas};
use crate::error::{Error, Result};
use crate::poly::CubicPoly;
use crate::tol;

/// Selects between the corrected formulas (production) and the forms as
/// originally printed (audit only). See `ERRATA.md`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaVariant {
    #[default]
    Corrected,
    AsPrinted,
}

/// Sign in front of the square-root term of `o`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OSign {
    #[default]
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct InvariantOptions {
    pub formulas: Formulas,
    pub o_sign: OSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicInvariants {
    pub delta_o: Complex,
    pub delta_l: Complex,
    pub d_o: Complex,
    pub small_delta_l: Complex,
    pub a1: Complex,
    pub a2: Complex,
    pub r1: Complex,
    pub r2: Complex,
    pub o: Complex,
    pub l_o: Complex,
    /// Principal `sqrt(delta_o)`, shared by every field above.
    pub sqrt_delta_o: Complex,
    /// Principal `delta_l^(1/3)`.
    pub cbrt_small_delta_l: Complex,
}

impl CubicInvariants {
    /// `delta_l^(2/3)`, always `(delta_l^(1/3))^2`.
    #[inline]
    pub fn small_delta_l_two_thirds(&self) -> Complex {
        self.cbrt_small_delta_l * self.cbrt_small_delta_l
    }
}

/// `-4b^3 d + b^2 c^2 + 18bcd - 4c^3 - 27d^2`, the classical discriminant.
pub fn discriminant(p: &CubicPoly) -> Complex {
    algebra::discriminant(p.b, p.c, p.d)
}

/// `4b^4c^2 - 4b^3cd - 14b^2c^3 + b^2d^2 + 28bc^2d + c^4 - 12cd^2`.
pub fn d_o(p: &CubicPoly) -> Complex {
    algebra::d_o(p.b, p.c, p.d)
}

/// Checks `|value| > band * rho^weight`, returning a degeneracy error otherwise.
pub(crate) fn outside_band(
    quantity: &'static str,
    value: Complex,
    rho: f64,
    weight: i32,
    make: fn(&'static str, f64, f64) -> Error,
) -> Result<()> {
    let band = tol::ZERO_BAND * rho.powi(weight);
    let magnitude = value.norm();
    if magnitude > band && magnitude.is_finite() {
        Ok(())
    } else {
        Err(make(quantity, magnitude, band))
    }
}

pub(crate) fn degenerate_denominator(quantity: &'static str, magnitude: f64, band: f64) -> Error {
    Error::DegenerateDenominator { quantity, magnitude, band }
}

pub fn compute_invariants(p: &CubicPoly) -> Result<CubicInvariants> {
    compute_invariants_with(p, InvariantOptions::default())
}

pub fn compute_invariants_with(p: &CubicPoly, opts: InvariantOptions) -> Result<CubicInvariants> {
    let (b, c, d) = (p.b, p.c, p.d);
    let rho = p.root_scale();

    let delta_o = discriminant(p);
    let d_o = d_o(p);
    outside_band("d_o", d_o, rho, 8, degenerate_denominator)?;
    let delta_l = algebra::delta_l(b, c, d);

    let sqrt_delta_o = complex::sqrt(delta_o);
    let (b2, c2, d2) = (b * b, c * c, d * d);
    let (b3, c3) = (b2 * b, c2 * c);
    let d_minus_bc = d - b * c;

    let small_delta_l = algebra::small_delta_l(b, c, d, sqrt_delta_o, delta_l);
    let cbrt_small_delta_l = complex::cbrt(small_delta_l);
    let a1 = algebra::a1(b, c, d, sqrt_delta_o);
    let a2 = algebra::a2(b, c, d, sqrt_delta_o);

    let sqrt_neg_delta_o = if opts.formulas.printed(Erratum::SqrtNegDeltaO) {
        complex::sqrt(-delta_o)
    } else {
        I * sqrt_delta_o
    };
    let sqrt_neg3_delta_o = if opts.formulas.printed(Erratum::SqrtNegThreeDeltaO) {
        complex::sqrt(delta_o * -3.0)
    } else {
        SQRT_NEG_3 * sqrt_delta_o
    };

    let q = algebra::q(b, c, d);
    let r1 = complex::cbrt(sqrt_neg_delta_o * (SQRT_3 / 9.0) + q);
    let r2 = complex::cbrt(sqrt_neg_delta_o * (SQRT_3 / 9.0) - q);

    let o_sign = match opts.o_sign {
        OSign::Plus => 1.0,
        OSign::Minus => -1.0,
    };
    let o = (b2 * c3 - c2 * c2 - c * d2 * 3.0 + b2 * d2 - b3 * c * d * 2.0
        + c * d_minus_bc * sqrt_neg3_delta_o * o_sign)
        / d_o;
    let l_o = (b2 * b2 * c * d * 2.0 + b3 * c3 - b3 * d2 - b2 * c2 * d * 5.0 - b * c2 * c2 * 4.0
        + b * c * d2 * 6.0
        + c3 * d * 5.0
        + SQRT_NEG_3 / 3.0 * c * (b2 * c - b * d * 2.0 - c2) * sqrt_delta_o)
        / d_o;

    Ok(CubicInvariants {
        delta_o,
        delta_l,
        d_o,
        small_delta_l,
        a1,
        a2,
        r1,
        r2,
        o,
        l_o,
        sqrt_delta_o,
        cbrt_small_delta_l,
    })
}

/// `r_l = l_o - m 4^(1/3) c sqrt(delta_o) delta_l^(1/3) / d_o` for a cube root `m` of -1.
pub fn resolvent_r_l(inv: &CubicInvariants, p: &CubicPoly, m: Complex) -> Complex {
    inv.l_o - m * CBRT_4 * p.c * inv.sqrt_delta_o * inv.cbrt_small_delta_l / inv.d_o
}
