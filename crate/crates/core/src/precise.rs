//! Double-double re-evaluation of the cube equalities behind the phase
//! factors of the uniform formula.
//!
//! `(A1 delta_l^(1/3))^3 = (-4 d_o R1)^3` and
//! `(A2 delta_l^(2/3))^3 = (4^(2/3) d_o^2 R2)^3` are checked in the
//! radical-free form `A1^3 delta_l = -64 d_o^3 R1^3`,
//! `A2^3 delta_l^2 = 16 d_o^6 R2^3`, where `R1^3` and `R2^3` are the
//! cube-root radicands. In double precision `A2` can lose most of its
//! digits to cancellation on otherwise benign inputs; the extra precision
//! removes that noise so that what remains measures the identity itself.

use num_complex::Complex as C;
use twofloat::TwoFloat;

use crate::algebra::{self, Dd, Field};
use crate::complex::{self, Complex};
use crate::errata::{Erratum, Formulas};
use crate::poly::CubicPoly;

fn lift(z: Complex) -> Dd {
    C::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

fn lower(z: Dd) -> Complex {
    Complex::new(z.re.hi(), z.im.hi())
}

/// `1/x` by one Newton step from the double-precision reciprocal. The
/// crate's own `TwoFloat / TwoFloat` loses the low word.
fn recip(x: TwoFloat) -> TwoFloat {
    let r = TwoFloat::from(1.0 / x.hi());
    r + r * (TwoFloat::from(1.0) - x * r)
}

fn div(z: Dd, w: Dd) -> Dd {
    let inv = recip(w.re * w.re + w.im * w.im);
    let num = z * w.conj();
    C::new(num.re * inv, num.im * inv)
}

/// Principal square root, refined from the double-precision one so the
/// branch is inherited from [`complex::sqrt`].
fn sqrt(z: Dd) -> Dd {
    let mut s = lift(complex::sqrt(lower(z)));
    if lower(s) == complex::ZERO {
        return s;
    }
    for _ in 0..2 {
        s = (s + div(z, s)).over(2.0);
    }
    s
}

fn relative_gap(a: Dd, b: Dd) -> f64 {
    let scale = lower(a).norm().max(lower(b).norm());
    if scale == 0.0 {
        0.0
    } else {
        lower(a - b).norm() / scale
    }
}

/// Relative mismatch of the two cube equalities, in double-double.
pub fn cube_equality_precise(p: &CubicPoly, formulas: Formulas) -> [f64; 2] {
    let (b, c, d) = (lift(p.b), lift(p.c), lift(p.d));
    let delta_o = algebra::discriminant(b, c, d);
    let sqrt_delta_o = sqrt(delta_o);
    let d_o = algebra::d_o(b, c, d);
    let small_delta_l = algebra::small_delta_l(b, c, d, sqrt_delta_o, algebra::delta_l(b, c, d));
    let a1 = algebra::a1(b, c, d, sqrt_delta_o);
    let a2 = algebra::a2(b, c, d, sqrt_delta_o);
    let q = algebra::q(b, c, d);
    let sqrt_neg_delta_o = if formulas.printed(Erratum::SqrtNegDeltaO) {
        sqrt(-delta_o)
    } else {
        C::new(-sqrt_delta_o.im, sqrt_delta_o.re)
    };
    let sqrt3 = -(Dd::sqrt_neg_3() * C::new(TwoFloat::from(0.0), TwoFloat::from(1.0)));
    let t = (sqrt_neg_delta_o * sqrt3).over(9.0);
    let (r1_cubed, r2_cubed) = (t + q, t - q);
    let d_o3 = d_o * d_o * d_o;
    let lhs1 = a1 * a1 * a1 * small_delta_l;
    let rhs1 = -(d_o3 * r1_cubed).s(64.0);
    let lhs2 = a2 * a2 * a2 * small_delta_l * small_delta_l;
    let rhs2 = (d_o3 * d_o3 * r2_cubed).s(16.0);
    [relative_gap(lhs1, rhs1), relative_gap(lhs2, rhs2)]
}
