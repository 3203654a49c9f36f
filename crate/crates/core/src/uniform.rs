//! Uniform closed-form roots of the general complex cubic.
//!
//! For each cube root `m` of -1,
//!
//! ```text
//! x_m = (4^(1/3)/2) m  e^{i phi1} R1 + (4^(1/3)/2) m^2 e^{i phi2} R2 - b/3
//! phi1 = arg(A1 delta_l^(1/3))   - arg(-d_o R1)
//! phi2 = arg(A2 delta_l^(2/3))   - arg(d_o^2 R2)
//! ```
//!
//! and, as a cross-check, the unrationalised form
//!
//! ```text
//! x_m = -(4^(1/3)/8) [m d_o A1 delta_l^(1/3) - m^2 4^(1/3) A2 delta_l^(2/3)] / d_o^2 - b/3.
//! ```
//!
//! Structural note: the path from the invariants to the roots
//! ([`roots_from_invariants`]) is straight-line arithmetic. It contains no
//! conditional on the sign, class or magnitude of the discriminant; the only
//! conditionals in the whole solve are the zero-band checks on `d`, `c`,
//! `d - bc` and `d_o`, which guard divisions and are independent of the
//! discriminant. The principal-branch helpers fold `-0.0` into `+0.0` with a
//! select on the imaginary part, which also does not inspect the discriminant.

use serde::{Deserialize, Serialize};

use crate::complex::{arg, unit, Complex, CBRT_4, CUBE_ROOTS_OF_MINUS_ONE};
use crate::error::{Error, Result};
use crate::invariants::{self, outside_band, CubicInvariants, InvariantOptions};
use crate::poly::CubicPoly;
use crate::roots::RootSet;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformTrace {
    pub inv: CubicInvariants,
    pub r_l_values: [Complex; 3],
    /// Unit-modulus factor multiplying `R1`, per `m`.
    pub phase1: [Complex; 3],
    /// Unit-modulus factor multiplying `R2`, per `m`.
    pub phase2: [Complex; 3],
    /// Roots by the unrationalised form, indexed like `CUBE_ROOTS_OF_MINUS_ONE`.
    pub raw_roots: [Complex; 3],
    /// Roots by the phase-corrected form, indexed like `CUBE_ROOTS_OF_MINUS_ONE`.
    pub final_roots: [Complex; 3],
    /// Relative mismatch of `(A1 delta_l^(1/3))^3` vs `(-4 d_o R1)^3` and of
    /// `(A2 delta_l^(2/3))^3` vs `(4^(2/3) d_o^2 R2)^3`.
    pub cube_equality: [f64; 2],
}

fn degenerate_input(quantity: &'static str, magnitude: f64, band: f64) -> Error {
    Error::DegenerateInput { quantity, magnitude, band }
}

/// Zero-band preconditions of the closed form.
pub fn check_preconditions(p: &CubicPoly) -> Result<()> {
    let rho = p.root_scale();
    outside_band("d", p.d, rho, 3, degenerate_input)?;
    outside_band("c", p.c, rho, 2, degenerate_input)?;
    outside_band("d - bc", p.d - p.b * p.c, rho, 3, degenerate_input)?;
    Ok(())
}

fn invariants_for(p: &CubicPoly, opts: InvariantOptions) -> Result<CubicInvariants> {
    check_preconditions(p)?;
    invariants::compute_invariants_with(p, opts).map_err(|e| match e {
        Error::DegenerateDenominator { quantity, magnitude, band } => {
            Error::DegenerateInput { quantity, magnitude, band }
        }
        other => other,
    })
}

/// Phase-corrected roots straight from the invariants. No data-dependent branches.
#[inline]
pub fn roots_from_invariants(inv: &CubicInvariants, b: Complex) -> [Complex; 3] {
    let half_k = CBRT_4 / 2.0;
    let t1 = inv.a1 * inv.cbrt_small_delta_l;
    let t2 = inv.a2 * inv.small_delta_l_two_thirds();
    let phase1 = unit(arg(t1) - arg(-inv.d_o * inv.r1));
    let phase2 = unit(arg(t2) - arg(inv.d_o * inv.d_o * inv.r2));
    let u = phase1 * inv.r1 * half_k;
    let v = phase2 * inv.r2 * half_k;
    let shift = b / 3.0;
    CUBE_ROOTS_OF_MINUS_ONE.map(|m| m * u + m * m * v - shift)
}

/// Unrationalised form of the roots.
#[inline]
pub fn raw_roots_from_invariants(inv: &CubicInvariants, b: Complex) -> [Complex; 3] {
    let t1 = inv.d_o * inv.a1 * inv.cbrt_small_delta_l;
    let t2 = inv.a2 * inv.small_delta_l_two_thirds() * CBRT_4;
    let d_o2 = inv.d_o * inv.d_o;
    let shift = b / 3.0;
    CUBE_ROOTS_OF_MINUS_ONE.map(|m| -(m * t1 - m * m * t2) * (CBRT_4 / 8.0) / d_o2 - shift)
}

/// Roots only, for timing loops.
pub fn uniform_raw(p: &CubicPoly) -> Result<[Complex; 3]> {
    let inv = invariants_for(p, InvariantOptions::default())?;
    Ok(roots_from_invariants(&inv, p.b))
}

pub fn uniform_roots(p: &CubicPoly) -> Result<(RootSet, UniformTrace)> {
    uniform_roots_with(p, InvariantOptions::default())
}

/// As [`uniform_roots`] with explicit formula options (audit use).
pub fn uniform_roots_with(p: &CubicPoly, opts: InvariantOptions) -> Result<(RootSet, UniformTrace)> {
    let inv = invariants_for(p, opts)?;
    let final_roots = roots_from_invariants(&inv, p.b);
    let raw_roots = raw_roots_from_invariants(&inv, p.b);

    let t1 = inv.a1 * inv.cbrt_small_delta_l;
    let t2 = inv.a2 * inv.small_delta_l_two_thirds();
    let phase1 = unit(arg(t1) - arg(-inv.d_o * inv.r1));
    let phase2 = unit(arg(t2) - arg(inv.d_o * inv.d_o * inv.r2));
    let rhs1 = -inv.d_o * inv.r1 * 4.0;
    let rhs2 = inv.d_o * inv.d_o * inv.r2 * (CBRT_4 * CBRT_4);
    let cube_equality = [relative_gap(t1.powi(3), rhs1.powi(3)), relative_gap(t2.powi(3), rhs2.powi(3))];

    let trace = UniformTrace {
        inv,
        r_l_values: CUBE_ROOTS_OF_MINUS_ONE.map(|m| invariants::resolvent_r_l(&inv, p, m)),
        phase1: CUBE_ROOTS_OF_MINUS_ONE.map(|m| m * phase1),
        phase2: CUBE_ROOTS_OF_MINUS_ONE.map(|m| m * m * phase2),
        raw_roots,
        final_roots,
        cube_equality,
    };
    Ok((RootSet::new(p, final_roots), trace))
}

fn relative_gap(a: Complex, b: Complex) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}

/// Verdict of the double-root criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Verdict {
    /// No pair fires.
    Simple,
    /// Exactly one pair fires; indices into `CUBE_ROOTS_OF_MINUS_ONE`.
    Double { pair: (usize, usize) },
    /// All root differences vanish.
    Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub verdict: Verdict,
    /// Criterion magnitude for the pairs `(0,1)`, `(0,2)`, `(1,2)`.
    pub magnitudes: [f64; 3],
    pub threshold: f64,
}

pub const CRITERION_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Double-root criterion: for each unordered pair `m1 != m2` evaluates
/// `[-d_o A1 + (m1 + m2) 4^(1/3) A2 delta_l^(1/3)] delta_l^(1/3) / d_o^2`,
/// which is proportional to `x_{m1} - x_{m2}`.
///
/// A perfect cube has `d_o = 0`, so the expression is undefined there; such
/// inputs are recognised directly and reported as [`Verdict::Triple`].
pub fn double_root_criterion(p: &CubicPoly) -> Result<CriterionOutcome> {
    double_root_criterion_with(p, tol::CRITERION)
}

/// [`double_root_criterion`] with a pair firing at `tolerance * scale`.
pub fn double_root_criterion_with(p: &CubicPoly, tolerance: f64) -> Result<CriterionOutcome> {
    let rho = p.root_scale();
    let threshold = tolerance * rho;
    let inv = match invariants_for(p, InvariantOptions::default()) {
        Ok(inv) => inv,
        Err(e) => {
            if is_perfect_cube(p) {
                return Ok(CriterionOutcome { verdict: Verdict::Triple, magnitudes: [0.0; 3], threshold });
            }
            return Err(e);
        }
    };
    let magnitudes = criterion_magnitudes(&inv);
    let firing: Vec<usize> = (0..3).filter(|&k| magnitudes[k] <= threshold).collect();
    let verdict = match firing.as_slice() {
        [] => Verdict::Simple,
        [k] => Verdict::Double { pair: CRITERION_PAIRS[*k] },
        _ => {
            if is_perfect_cube(p) {
                Verdict::Triple
            } else {
                return Err(Error::AmbiguousCriterion { magnitudes });
            }
        }
    };
    Ok(CriterionOutcome { verdict, magnitudes, threshold })
}

pub fn criterion_magnitudes(inv: &CubicInvariants) -> [f64; 3] {
    let d_o2 = inv.d_o * inv.d_o;
    CRITERION_PAIRS.map(|(i, j)| {
        let sum = CUBE_ROOTS_OF_MINUS_ONE[i] + CUBE_ROOTS_OF_MINUS_ONE[j];
        ((-inv.d_o * inv.a1 + sum * CBRT_4 * inv.a2 * inv.cbrt_small_delta_l) * inv.cbrt_small_delta_l / d_o2)
            .norm()
    })
}

/// `c - b^2/3` and `d - b^3/27` both inside their zero-bands.
fn is_perfect_cube(p: &CubicPoly) -> bool {
    let rho = p.root_scale();
    let depressed_c = p.c - p.b * p.b / 3.0;
    let depressed_d = p.d - p.b * p.b * p.b / 27.0;
    depressed_c.norm() <= tol::ZERO_BAND * rho * rho && depressed_d.norm() <= tol::ZERO_BAND * rho.powi(3)
}
