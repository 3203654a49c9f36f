//! Classical Cardano-Tartaglia solver with an explicit case split.
//!
//! This is the branchy baseline: the depressed cubic `t^3 + P t + Q` is
//! classified by its discriminant and each class takes its own code path.

use std::f64::consts::PI;

use crate::complex::{self, Complex, SQRT_3};
use crate::poly::CubicPoly;
use crate::roots::RootSet;
use crate::tol;

/// Which branch of the classical method produced the roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardanoCase {
    TripleRoot,
    DoubleRoot,
    ThreeRealRoots,
    OneRealRoot,
    Complex,
}

pub fn cardano_reference(p: &CubicPoly) -> RootSet {
    cardano_with_case(p).0
}

pub fn cardano_with_case(p: &CubicPoly) -> (RootSet, CardanoCase) {
    let (b, c, d) = (p.b, p.c, p.d);
    let shift = b / 3.0;
    let pp = c - b * b / 3.0;
    let qq = b * b * b * (2.0 / 27.0) - b * c / 3.0 + d;
    let disc = -(pp * pp * pp * 4.0 + qq * qq * 27.0);

    let rho = p.root_scale();
    let band = tol::ZERO_BAND;

    let (t, case) = if pp.norm() <= band * rho * rho && qq.norm() <= band * rho.powi(3) {
        ([complex::ZERO; 3], CardanoCase::TripleRoot)
    } else if disc.norm() <= band * rho.powi(6) {
        let simple = qq * 3.0 / pp;
        let double = -qq * 1.5 / pp;
        ([simple, double, double], CardanoCase::DoubleRoot)
    } else if p.is_real() {
        let (pr, qr) = (pp.re, qq.re);
        if disc.re > 0.0 {
            let m = 2.0 * (-pr / 3.0).sqrt();
            let cos_arg = (3.0 * qr / (pr * m)).clamp(-1.0, 1.0);
            let theta = cos_arg.acos() / 3.0;
            let t = [0.0, 1.0, 2.0].map(|k: f64| Complex::new(m * (theta - 2.0 * PI * k / 3.0).cos(), 0.0));
            (t, CardanoCase::ThreeRealRoots)
        } else {
            let s = (qr * qr / 4.0 + pr * pr * pr / 27.0).sqrt();
            // pick the sign that avoids cancellation
            let w = -qr / 2.0 - s.copysign(qr);
            let u = w.cbrt();
            let v = if u == 0.0 { 0.0 } else { -pr / (3.0 * u) };
            let re = -(u + v) / 2.0;
            let im = SQRT_3 / 2.0 * (u - v);
            (
                [Complex::new(u + v, 0.0), Complex::new(re, im), Complex::new(re, -im)],
                CardanoCase::OneRealRoot,
            )
        }
    } else {
        let s = complex::sqrt(qq * qq / 4.0 + pp * pp * pp / 27.0);
        let w1 = -qq / 2.0 + s;
        let w2 = -qq / 2.0 - s;
        let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
        let u = complex::cbrt(w);
        let v = -pp / (u * 3.0);
        let omega = Complex::new(-0.5, SQRT_3 / 2.0);
        let omega2 = omega.conj();
        ([u + v, omega * u + omega2 * v, omega2 * u + omega * v], CardanoCase::Complex)
    };

    (RootSet::new(p, t.map(|ti| ti - shift)), case)
}
