//! The polynomial parts of the cubic invariants, written once over any
//! complex field so the same expressions serve the double-precision
//! solver and the double-double audit.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex as C;
use twofloat::TwoFloat;

use crate::complex::{Complex, SQRT_NEG_3};

pub(crate) trait Field: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn sqrt_neg_3() -> Self;
    /// Multiplication by a small exact constant.
    fn s(self, x: f64) -> Self;
    fn over(self, x: f64) -> Self;
}

impl Field for Complex {
    #[inline(always)]
    fn sqrt_neg_3() -> Self {
        SQRT_NEG_3
    }
    #[inline(always)]
    fn s(self, x: f64) -> Self {
        self * x
    }
    #[inline(always)]
    fn over(self, x: f64) -> Self {
        self / x
    }
}

pub(crate) type Dd = C<TwoFloat>;

impl Field for Dd {
    fn sqrt_neg_3() -> Self {
        C::new(TwoFloat::from(0.0), TwoFloat::from(3.0).sqrt())
    }
    fn s(self, x: f64) -> Self {
        C::new(self.re * x, self.im * x)
    }
    fn over(self, x: f64) -> Self {
        C::new(self.re / x, self.im / x)
    }
}

/// The discriminant through the depressed cubic,
/// `(-4 (3c - b^2)^3 - (2b^3 - 9bc + 27d)^2) / 27`. Both inner factors
/// vanish with the root spread rather than the root size, so a tight
/// cluster far from the origin keeps its digits.
#[inline(always)]
pub(crate) fn discriminant<T: Field>(b: T, c: T, d: T) -> T {
    let p = c.s(3.0) - b * b;
    let q = (b * b * b).s(2.0) - (b * c).s(9.0) + d.s(27.0);
    (-(p * p * p).s(4.0) - q * q).over(27.0)
}

#[inline(always)]
pub(crate) fn d_o<T: Field>(b: T, c: T, d: T) -> T {
    let (b2, c2) = (b * b, c * c);
    (b2 * b2 * c2).s(4.0) - (b2 * b * c * d).s(4.0) - (b2 * c2 * c).s(14.0) + b2 * d * d + (b * c2 * d).s(28.0)
        + c2 * c2
        - (c * d * d).s(12.0)
}

#[inline(always)]
pub(crate) fn delta_l<T: Field>(b: T, c: T, d: T) -> T {
    let (b2, c2, d2) = (b * b, c * c, d * d);
    let (b3, c3, d3) = (b2 * b, c2 * c, d2 * d);
    let b4 = b2 * b2;
    let b6 = b3 * b3;
    c3.s(2.0) * (b6.s(8.0) + (b3 * d).s(132.0) + d2.s(36.0) + c3 + (b2 * c2).s(33.0) - (b * c * d).s(66.0))
        + (b4 * c).s(12.0) * (d2 - c3.s(7.0))
        - b2 * c2 * d * (b3.s(24.0) + d.s(291.0))
        + d3 * ((b * c).s(144.0) - b3.s(2.0) - d.s(27.0))
}

/// `(d - bc) sqrt(Delta_o) (4b^2c^2 - 4bcd + 2c^3 + d^2) + sqrt(-3)/9 Delta_l`.
#[inline(always)]
pub(crate) fn small_delta_l<T: Field>(b: T, c: T, d: T, sqrt_delta_o: T, delta_l: T) -> T {
    let (b2, c2) = (b * b, c * c);
    (d - b * c) * sqrt_delta_o * ((b2 * c2).s(4.0) - (b * c * d).s(4.0) + (c2 * c).s(2.0) + d * d)
        + (T::sqrt_neg_3() * delta_l).over(9.0)
}

#[inline(always)]
pub(crate) fn a1<T: Field>(b: T, c: T, d: T, sqrt_delta_o: T) -> T {
    let (b2, c2) = (b * b, c * c);
    -(T::sqrt_neg_3() * ((b2 * b * c).s(4.0) - (d * b2).s(2.0) - (b * c2).s(13.0) + (d * c).s(15.0))).s(2.0).over(3.0)
        + (c * sqrt_delta_o).s(2.0)
}

#[inline(always)]
pub(crate) fn a2<T: Field>(b: T, c: T, d: T, sqrt_delta_o: T) -> T {
    let (b2, c2, d2) = (b * b, c * c, d * d);
    let (b3, c3) = (b2 * b, c2 * c);
    (b3 * b2 * c2).s(8.0) - (b2 * b2 * c * d).s(8.0) - (b3 * c3).s(40.0) + (b3 * d2).s(2.0)
        + (b2 * c2 * d).s(116.0)
        + (b * c2 * c2).s(23.0)
        - (b * c * d2).s(99.0)
        - (c3 * d).s(21.0)
        + (d2 * d).s(27.0)
        - T::sqrt_neg_3() * ((b2 * c2).s(8.0) - (b * c * d).s(10.0) + c3 + d2.s(3.0)) * sqrt_delta_o
}

/// `(2b^3 - 9bc + 27d) / 27`.
#[inline(always)]
pub(crate) fn q<T: Field>(b: T, c: T, d: T) -> T {
    ((b * b * b).s(2.0) - (c * b).s(9.0) + d.s(27.0)).over(27.0)
}
