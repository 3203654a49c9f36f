//! Coefficients of the change-of-variable pipeline for a 3x3 matrix.
//!
//! Everything is a polynomial in the entries, divided by `m2`, `d3` and
//! `f3`. Six coefficients have a printed form that fails the audit; see
//! [`crate::errata`].

use serde::{Deserialize, Serialize};

use crate::complex::{self, Complex, CUBE_ROOTS_OF_MINUS_ONE};
use crate::error::{Error, Result};
use crate::errata::{Erratum, Formulas};
use crate::tol;

use super::Matrix3;

/// Deliberate corruption used to check that the audit notices a bad formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjectedTypo {
    /// Flips the sign of the `(m1 - c1) Tr(M)` term of `e2`.
    FlipE2Sign,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainOptions {
    pub formulas: Formulas,
    pub typo: Option<InjectedTypo>,
}

impl ChainOptions {
    pub fn as_printed() -> Self {
        Self { formulas: Formulas::as_printed(), typo: None }
    }

    pub fn printed_only(e: Erratum) -> Self {
        Self { formulas: Formulas::only(e), typo: None }
    }

    pub fn with_typo(typo: InjectedTypo) -> Self {
        Self { formulas: Formulas::default(), typo: Some(typo) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffChain {
    pub a: Complex,
    /// `m1`, needed by the eigenvalue formulas.
    pub m1: Complex,
    /// `max(1, max |m_ij|)`.
    pub scale: f64,
    pub c1: Complex,
    pub c2: Complex,
    pub e1: Complex,
    pub e2: Complex,
    pub e3: Complex,
    pub e4: Complex,
    /// `n1..n10` at indices `0..10`.
    pub n: [Complex; 10],
    /// `d1..d4`; `d3 = m2 m4 + m3 m7`.
    pub d: [Complex; 4],
    pub f: [Complex; 4],
    pub r: [Complex; 6],
    pub l: [Complex; 9],
}

macro_rules! idx {
    ($arr:expr, $k:literal) => {
        $arr[$k - 1]
    };
}

impl CoeffChain {
    pub fn n(&self, k: usize) -> Complex {
        self.n[k - 1]
    }
    pub fn d(&self, k: usize) -> Complex {
        self.d[k - 1]
    }
    pub fn f(&self, k: usize) -> Complex {
        self.f[k - 1]
    }
    pub fn r(&self, k: usize) -> Complex {
        self.r[k - 1]
    }
    pub fn l(&self, k: usize) -> Complex {
        self.l[k - 1]
    }
    pub fn d3(&self) -> Complex {
        self.d[2]
    }
    pub fn f3(&self) -> Complex {
        self.f[2]
    }

    /// `A..E` of the b-equation.
    pub fn b_equation_terms(&self) -> [Complex; 5] {
        let (a, e1, e2, e3, e4, c1) = (self.a, self.e1, self.e2, self.e3, self.e4, self.c1);
        [
            a * a * a * 0.5 + e1 * a * a + e2 * a + e3,
            -a * a * 1.5 - e1 * a * 2.0 - e2,
            a * 1.5 + e1,
            a * a * 0.5 + (e1 + c1 * 0.5) * a + e4,
            -a - (e1 + c1 * 0.5),
        ]
    }

    /// `Delta_p(b) = b^2 + 2(c1 - a) b + a^2 - 2 c1 a + c2`.
    pub fn delta_p(&self, b: Complex) -> Complex {
        // completed square: keeps its digits when b and c1 - a are large
        let t = b + self.c1 - self.a;
        t * t + self.c2 - self.c1 * self.c1
    }

    /// `a^2 - 2 c1 a + c2`, the constant part of `Delta_p`.
    pub fn delta_p_constant(&self) -> Complex {
        self.a * self.a - self.c1 * self.a * 2.0 + self.c2
    }

    /// Coefficient of `l` in the l-cubic.
    pub fn b_l(&self, o: Complex) -> Complex {
        let (l, a) = (&self.l, self.a);
        idx!(l, 3) * o * o - (idx!(l, 1) * a + idx!(l, 4)) * o * 2.0 + a * a * 6.0 - idx!(l, 2) * a * 2.0 + idx!(l, 5)
    }

    /// Coefficient of `l^2` in the l-cubic.
    pub fn c_l(&self, o: Complex) -> Complex {
        -idx!(self.l, 1) * o + self.a * 6.0 - idx!(self.l, 2)
    }

    /// Constant term of the l-cubic.
    pub fn d_l(&self, o: Complex) -> Complex {
        let (l, a) = (&self.l, self.a);
        -idx!(l, 6) * o * o * o + (idx!(l, 3) * a - idx!(l, 7)) * o * o
            - (idx!(l, 1) * a * a + idx!(l, 4) * a * 2.0 + idx!(l, 8)) * o
            + a * a * a * 2.0
            - idx!(l, 2) * a * a
            + idx!(l, 5) * a
            + idx!(l, 9)
    }

    /// Coefficients `(q2, q1, q0)` of the o-quadratic.
    pub fn o_quadratic(&self) -> [Complex; 3] {
        let l = &self.l;
        [
            idx!(l, 1) * idx!(l, 1) - idx!(l, 3) * 6.0,
            (idx!(l, 1) * idx!(l, 2) + idx!(l, 4) * 6.0) * 2.0,
            idx!(l, 2) * idx!(l, 2) - idx!(l, 5) * 6.0,
        ]
    }
}

fn check_divisor(quantity: &'static str, value: Complex, scale: f64, weight: i32) -> Result<()> {
    let band = tol::ZERO_BAND * scale.powi(weight);
    if value.norm() <= band || !complex::is_finite(value) {
        return Err(Error::DegenerateMatrix { quantity, magnitude: value.norm(), band });
    }
    Ok(())
}

pub fn coeff_chain(m: &Matrix3, a: Complex) -> Result<CoeffChain> {
    coeff_chain_with(m, a, ChainOptions::default())
}

pub fn coeff_chain_with(m: &Matrix3, a: Complex, opts: ChainOptions) -> Result<CoeffChain> {
    let printed = |e| opts.formulas.printed(e);
    let scale = m.scale();
    let [m1, m2, m3, m4, m5, m6, m7, m8, m9] = m.entries();
    check_divisor("m2", m2, scale, 1)?;
    let d3 = m2 * m4 + m3 * m7;
    check_divisor("d3", d3, scale, 2)?;
    let f3 = (m5 - m1) * m3 * m7 + (m9 - m1) * m2 * m4 - m2 * m6 * m7 - m3 * m4 * m8;
    check_divisor("f3", f3, scale, 3)?;

    let tr = m.trace();
    let det = m.det();
    let q = (tr * tr - m.trace_of_square()) * 0.25;
    let c1 = m1 - m5 - m3 * m8 / m2;
    let c2 = c1 * c1 + d3 * 4.0;
    let g = m1 * 2.0 - c1;
    let h = m1 - c1;

    let e1 = h * 1.5 - tr * 0.5;
    let e2_mid = if printed(Erratum::E2Square) { (c2 - c1) * (c2 - c1) * 0.375 } else { (c2 - c1 * c1) * 0.375 };
    let e2_tr = if opts.typo == Some(InjectedTypo::FlipE2Sign) { h * tr } else { -h * tr };
    let e2 = h * h * 1.5 + e2_mid + e2_tr + q;
    let e3 = (g * g * g + g * c2 * 3.0) * 0.125 - (g * g + c2) * tr * 0.25 + g * q - det;
    let e4 = (g * g * 3.0 + c2) * 0.125 - g * tr * 0.5 + q;

    let n1 = c1 * c2 * 0.5 + c1 * e2 + if printed(Erratum::N1Term) { c2 * c1 } else { c2 * e1 } - c1 * e4 * 2.0 - e3;
    let n9 = c1 * e3 + c2 * e4;
    let n10 = e3 + c1 * e4;
    let n2 = c2 * d3 - c1 * c1 * e4 * 2.0 - c1 * e3 * 2.0 - d3 * e2 * 2.0;
    let n3 = c2 * e3 - d3 * e3 * 2.0 + if printed(Erratum::N3Term) { c1 * e2 * e4 } else { c1 * c2 * e4 };
    let n8 = c1 * e3 + if printed(Erratum::N8Term) { e2 * e4 } else { c2 * e4 } - d3 * e4 * 2.0;
    let n4 = n1 / d3 + if printed(Erratum::N4Divisor) { n2 / d3 } else { n2 / f3 };
    let n5 = n9 / d3 + n3 / f3;
    let n6 = n9 / d3 - n3 / f3;
    let n7 = n10 / d3 - (n9 - d3 * e4 * 2.0) / f3;

    let d = [d3 * a * a + n1 * a + n9, -d3 * a * 2.0 - n1, d3, d3 * a + n10];
    let f = [f3 * a * a + n2 * a + n3, -f3 * a * 2.0 - n2, f3, -f3 * a + n8];

    let r2 = -n1 / d3 + n2 / f3;
    let r6 = n10 / d3 + n8 / f3;
    let r = [-r2 * a + n6, r2, a * 2.0 + n7, a * a * 2.0 + n4 * a + n5, -a * 4.0 - n4, r6];

    let l1 = n1 * 2.0 / d3 - n4 + r6;
    let l2 = r6 - n4 - n10 * 2.0 / d3;
    let l4 = n9 * 2.0 / d3 - n5 - c1 * r6;
    let l5 = n5 + (n4 * n10 - r6 * n1) / d3;
    let l3 = if printed(Erratum::L3) {
        n5 - c2 * 2.0 + c1 * r6 * 2.0 + (r6 * n1 - n4 * n10) / d3
    } else {
        (l1 * l1 - l2 * l2) * 0.25 + l5 + c1 * l2 - c2 * 3.0
    };
    let l6 = c1 * n5 * 2.0 + c2 * n4 + (n1 * (n5 - c2 * 2.0) - (c1 * 4.0 + n4) * n9) / d3;
    let l7 = c1 * n5 * 2.0 + c2 * (n4 + r6) + ((n5 - c2 * 2.0) * n10 - r6 * n9) / d3;
    let l8 = c2 * r6 + (n4 * n9 - n1 * n5) / d3;
    let l9 = (n5 * n10 - r6 * n9) / d3;

    Ok(CoeffChain {
        a,
        m1,
        scale,
        c1,
        c2,
        e1,
        e2,
        e3,
        e4,
        n: [n1, n2, n3, n4, n5, n6, n7, n8, n9, n10],
        d,
        f,
        r,
        l: [l1, l2, l3, l4, l5, l6, l7, l8, l9],
    })
}

/// Roots of the o-quadratic, larger magnitude first.
///
/// When the leading coefficient is inside its band the equation is solved
/// as linear and a single root is returned.
pub fn solve_o(chain: &CoeffChain) -> Result<Vec<Complex>> {
    let [q2, q1, q0] = chain.o_quadratic();
    let band = tol::ZERO_BAND * chain.scale.powi(2);
    if q2.norm() <= band {
        if q1.norm() <= band {
            return Err(Error::DegenerateQuadratic);
        }
        return Ok(vec![-q0 / q1]);
    }
    let half = q1 * 0.5;
    let root = complex::sqrt(half * half - q2 * q0);
    // pick the sign that avoids cancellation in -half -/+ root
    let sgn = if (half.conj() * root).re >= 0.0 { 1.0 } else { -1.0 };
    let big = -(half + root * sgn);
    if big.norm() == 0.0 {
        return Ok(vec![Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)]);
    }
    Ok(vec![big / q2, q0 / big])
}

/// `s_l` and the three values of `r_l` for a given `o`.
pub fn resolvent_l(chain: &CoeffChain, o: Complex) -> (Complex, [Complex; 3]) {
    let l = &chain.l;
    let centre = (idx!(l, 1) * o + idx!(l, 2)) / 6.0;
    let inner = centre * centre * centre
        - (idx!(l, 6) * o * o * o + idx!(l, 7) * o * o + idx!(l, 8) * o - idx!(l, 9)) * 0.5;
    let s_l = complex::cbrt(inner);
    (s_l, CUBE_ROOTS_OF_MINUS_ONE.map(|m| centre + m * s_l))
}

/// Residual of the l-cubic `2 l^3 + C_l l^2 + B_l l + D_l`.
pub fn l_cubic(chain: &CoeffChain, o: Complex, l: Complex) -> Complex {
    l * l * l * 2.0 + chain.c_l(o) * l * l + chain.b_l(o) * l + chain.d_l(o)
}
