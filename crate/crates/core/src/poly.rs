use serde::{Deserialize, Serialize};

use crate::complex::Complex;

/// Monic cubic `x^3 + b x^2 + c x + d` with complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicPoly {
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl CubicPoly {
    pub const fn new(b: Complex, c: Complex, d: Complex) -> Self {
        Self { b, c, d }
    }

    /// Real-coefficient shorthand.
    pub const fn real(b: f64, c: f64, d: f64) -> Self {
        Self::new(Complex::new(b, 0.0), Complex::new(c, 0.0), Complex::new(d, 0.0))
    }

    /// The monic cubic with the given roots (with multiplicity).
    pub fn from_roots(r: [Complex; 3]) -> Self {
        let [x, y, z] = r;
        Self::new(-(x + y + z), x * y + x * z + y * z, -(x * y * z))
    }

    /// Horner evaluation `((x + b) x + c) x + d`.
    #[inline]
    pub fn eval(&self, x: Complex) -> Complex {
        ((x + self.b) * x + self.c) * x + self.d
    }

    /// Derivative `3x^2 + 2bx + c`.
    #[inline]
    pub fn eval_derivative(&self, x: Complex) -> Complex {
        (x * 3.0 + self.b * 2.0) * x + self.c
    }

    /// `max(1, |b|, |c|, |d|)`.
    pub fn coeff_scale(&self) -> f64 {
        1f64.max(self.b.norm()).max(self.c.norm()).max(self.d.norm())
    }

    /// A homogeneous root-magnitude scale `max(1, |b|/3, sqrt(|c|/3), cbrt(|d|))`.
    ///
    /// Never exceeds `max(1, max |root|)`. Quantities of weight `w` in the
    /// roots (the discriminant has weight 6) are compared against `tol * scale^w`.
    pub fn root_scale(&self) -> f64 {
        1f64.max(self.b.norm() / 3.0)
            .max((self.c.norm() / 3.0).sqrt())
            .max(self.d.norm().cbrt())
    }

    /// `q(y) = p(y - t)`: roots move by `+t`.
    pub fn shifted(&self, t: Complex) -> Self {
        let (b, c, d) = (self.b, self.c, self.d);
        Self::new(
            b - t * 3.0,
            c - b * t * 2.0 + t * t * 3.0,
            d - c * t + b * t * t - t * t * t,
        )
    }

    /// `x^3 + s b x^2 + s^2 c x + s^3 d`: roots are multiplied by `s`.
    pub fn scaled(&self, s: Complex) -> Self {
        Self::new(self.b * s, self.c * s * s, self.d * s * s * s)
    }

    pub fn is_real(&self) -> bool {
        self.b.im == 0.0 && self.c.im == 0.0 && self.d.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        [self.b, self.c, self.d].iter().all(|z| crate::complex::is_finite(*z))
    }
}

/// Free-function form of [`CubicPoly::eval`].
pub fn eval_poly(p: &CubicPoly, x: Complex) -> Complex {
    p.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SQRT_3;

    #[test]
    fn eval_examples() {
        let p = CubicPoly::real(-6.0, 11.0, -6.0);
        assert_eq!(p.eval(Complex::new(1.0, 0.0)), Complex::new(0.0, 0.0));
        let p = CubicPoly::real(0.0, 0.0, 0.0);
        assert_eq!(p.eval(Complex::new(5.0, 0.0)), Complex::new(125.0, 0.0));
        let p = CubicPoly::real(0.0, 0.0, -1.0);
        let w = Complex::new(-0.5, SQRT_3 / 2.0);
        assert!(p.eval(w).norm() < 1e-15);
    }

    #[test]
    fn shift_and_scale_move_roots() {
        let r = [Complex::new(1.0, 2.0), Complex::new(-0.5, 0.25), Complex::new(3.0, -1.0)];
        let p = CubicPoly::from_roots(r);
        let t = Complex::new(0.75, -0.5);
        let q = p.shifted(t);
        for x in r {
            assert!(q.eval(x + t).norm() < 1e-12);
        }
        let s = Complex::new(-2.0, 0.5);
        let q = p.scaled(s);
        for x in r {
            assert!(q.eval(x * s).norm() < 1e-11);
        }
    }

    #[test]
    fn root_scale_bounds_largest_root() {
        let r = [Complex::new(10.0, 0.0), Complex::new(10.0, 0.0), Complex::new(10.0, 0.0)];
        let p = CubicPoly::from_roots(r);
        assert!((p.root_scale() - 10.0).abs() < 1e-12);
        assert_eq!(CubicPoly::real(0.0, 0.0, 0.0).root_scale(), 1.0);
    }
}
