//! Complex scalars and the principal-branch radicals used by every solver.
//!
//! All fractional powers go through [`sqrt`] and [`cbrt`] so that branch
//! choices are made in exactly one place:
//!
//! * `arg` lies in `(-pi, pi]`,
//! * `sqrt(z)` has argument in `(-pi/2, pi/2]`,
//! * `cbrt(z)` has argument in `(-pi/3, pi/3]`.
//!
//! A negative zero imaginary part is treated as positive zero, so the
//! negative real axis always maps to the upper edge of each sector.

use std::f64::consts::PI;

pub use num_complex::Complex64 as Complex;

/// `sqrt(3)`.
pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// `sqrt(-3) = i*sqrt(3)` on the principal branch.
pub const SQRT_NEG_3: Complex = Complex::new(0.0, SQRT_3);

/// `4^(1/3)`.
pub const CBRT_4: f64 = 1.587_401_051_968_199_4;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// The three cube roots of `-1`, in the fixed order
/// `[-1, (1 - i*sqrt(3))/2, (1 + i*sqrt(3))/2]`.
///
/// The closed-form solvers index their three roots by these values.
pub const CUBE_ROOTS_OF_MINUS_ONE: [Complex; 3] = [
    Complex::new(-1.0, 0.0),
    Complex::new(0.5, -SQRT_3 / 2.0),
    Complex::new(0.5, SQRT_3 / 2.0),
];

#[inline]
fn canonical(z: Complex) -> Complex {
    // -0.0 == 0.0, so this folds a negative zero imaginary part to +0.0.
    if z.im == 0.0 {
        Complex::new(z.re, 0.0)
    } else {
        z
    }
}

/// Argument in `(-pi, pi]`.
#[inline]
pub fn arg(z: Complex) -> f64 {
    let z = canonical(z);
    z.im.atan2(z.re)
}

/// Principal square root, argument in `(-pi/2, pi/2]`.
///
/// Uses the cancellation-free half-angle formulation.
pub fn sqrt(z: Complex) -> Complex {
    let z = canonical(z);
    if z.re == 0.0 && z.im == 0.0 {
        return ZERO;
    }
    let r = z.norm();
    if z.re >= 0.0 {
        let t = (0.5 * (r + z.re)).sqrt();
        Complex::new(t, z.im / (2.0 * t))
    } else {
        let t = (0.5 * (r - z.re)).sqrt();
        // im >= 0 after canonicalisation maps to the upper half plane
        Complex::new(z.im.abs() / (2.0 * t), t.copysign(z.im))
    }
}

/// Principal cube root, argument in `(-pi/3, pi/3]`.
pub fn cbrt(z: Complex) -> Complex {
    let z = canonical(z);
    if z.im == 0.0 {
        if z.re >= 0.0 {
            return Complex::new(z.re.cbrt(), 0.0);
        }
        // negative real axis: arg = pi -> pi/3
        let m = (-z.re).cbrt();
        return Complex::new(0.5 * m, SQRT_3 / 2.0 * m);
    }
    let theta = z.im.atan2(z.re) / 3.0;
    let m = z.norm().cbrt();
    let (s, c) = theta.sin_cos();
    debug_assert!(theta > -PI / 3.0 - 1e-15 && theta <= PI / 3.0 + 1e-15);
    Complex::new(m * c, m * s)
}

/// `exp(i*phi)`.
#[inline]
pub fn unit(phi: f64) -> Complex {
    let (s, c) = phi.sin_cos();
    Complex::new(c, s)
}

#[inline]
pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex, b: Complex, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn negative_real_axis_maps_to_upper_edge() {
        let s = sqrt(Complex::new(-4.0, -0.0));
        assert_eq!(s, Complex::new(0.0, 2.0));
        let c = cbrt(Complex::new(-8.0, -0.0));
        assert!((c - Complex::new(1.0, SQRT_3)).norm() < 1e-15);
        assert!((arg(Complex::new(-1.0, -0.0)) - PI).abs() < 1e-16);
    }

    #[test]
    fn zero_maps_to_zero() {
        assert_eq!(sqrt(ZERO), ZERO);
        assert_eq!(cbrt(ZERO), ZERO);
    }

    #[test]
    fn cube_roots_of_minus_one() {
        for (i, m) in CUBE_ROOTS_OF_MINUS_ONE.iter().enumerate() {
            assert!((m * m * m + ONE).norm() < 4.0 * f64::EPSILON);
            for n in &CUBE_ROOTS_OF_MINUS_ONE[i + 1..] {
                assert!((m - n).norm() > 1.0);
            }
        }
        let sum: Complex = CUBE_ROOTS_OF_MINUS_ONE.iter().sum();
        assert!(sum.norm() < 1e-15);
    }

    #[test]
    fn sqrt_neg_3_constant() {
        assert!((SQRT_NEG_3 - sqrt(Complex::new(-3.0, 0.0))).norm() < 1e-15);
        assert!((CBRT_4 - 4f64.cbrt()).abs() < 1e-15);
    }

    fn any_complex() -> impl Strategy<Value = Complex> {
        (-1e6f64..1e6, -1e6f64..1e6, prop::bool::ANY).prop_map(|(re, im, on_axis)| {
            if on_axis {
                Complex::new(re, 0.0)
            } else {
                Complex::new(re, im)
            }
        })
    }

    proptest! {
        #[test]
        fn sqrt_is_principal(z in any_complex()) {
            let s = sqrt(z);
            prop_assert!(close(s * s, z, 4.0 * f64::EPSILON) || z.norm() == 0.0);
            let a = arg(s);
            prop_assert!(a > -PI / 2.0 && a <= PI / 2.0, "arg {a}");
        }

        #[test]
        fn cbrt_is_principal(z in any_complex()) {
            let c = cbrt(z);
            prop_assert!(close(c * c * c, z, 4.0 * f64::EPSILON) || z.norm() == 0.0);
            let a = arg(c);
            prop_assert!(a > -PI / 3.0 - 1e-15 && a <= PI / 3.0 + 1e-15, "arg {a}");
        }
    }
}
