use serde::{Deserialize, Serialize};

use crate::complex::{Complex, ONE, ZERO};
use crate::poly::CubicPoly;

/// General 3x3 complex matrix, row-major:
/// `(m1 m2 m3 / m4 m5 m6 / m7 m8 m9)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix3 {
    pub rows: [[Complex; 3]; 3],
}

impl Matrix3 {
    pub const fn from_rows(rows: [[Complex; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        Self { rows: rows.map(|r| r.map(|x| Complex::new(x, 0.0))) }
    }

    pub fn zero() -> Self {
        Self { rows: [[ZERO; 3]; 3] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..3 {
            m.rows[k][k] = ONE;
        }
        m
    }

    pub fn diagonal(d: [Complex; 3]) -> Self {
        let mut m = Self::zero();
        for k in 0..3 {
            m.rows[k][k] = d[k];
        }
        m
    }

    /// The companion matrix `(-b 1 c/d / 0 0 1 / -d 0 0)` whose
    /// characteristic polynomial is `x^3 + b x^2 + c x + d`.
    pub fn companion(p: &CubicPoly) -> Self {
        Self::from_rows([[-p.b, ONE, p.c / p.d], [ZERO, ZERO, ONE], [-p.d, ZERO, ZERO]])
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.rows[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex) {
        self.rows[i][j] = v;
    }

    /// Entries `m1..m9` in row-major order.
    pub fn entries(&self) -> [Complex; 9] {
        let r = &self.rows;
        [r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]]
    }

    pub fn trace(&self) -> Complex {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = (0..3).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        out
    }

    pub fn trace_of_square(&self) -> Complex {
        (0..3).flat_map(|i| (0..3).map(move |k| (i, k))).map(|(i, k)| self.rows[i][k] * self.rows[k][i]).sum()
    }

    pub fn det(&self) -> Complex {
        let [m1, m2, m3, m4, m5, m6, m7, m8, m9] = self.entries();
        m1 * (m5 * m9 - m6 * m8) - m2 * (m4 * m9 - m6 * m7) + m3 * (m4 * m8 - m5 * m7)
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        let [a, b, c, d, e, f, g, h, i] = self.entries();
        let adj = [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d],
        ];
        Some(Self { rows: adj.map(|r| r.map(|x| x / det)) })
    }

    /// `P M P^T` for the permutation matrix `P` sending basis vector `perm[k]` to `k`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = self.rows[perm[i]][perm[j]];
            }
        }
        out
    }

    /// `max(1, max |m_ij|)`.
    pub fn scale(&self) -> f64 {
        self.rows.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|z| crate::complex::is_finite(*z))
    }
}

/// `x^3 - Tr(M) x^2 + ((Tr M)^2 - Tr(M^2))/2 x - det M`.
pub fn char_poly(m: &Matrix3) -> CubicPoly {
    let t = m.trace();
    CubicPoly::new(-t, (t * t - m.trace_of_square()) * 0.5, -m.det())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_examples() {
        let m = Matrix3::from_real([[1., 0., 0.], [0., 2., 0.], [0., 0., 3.]]);
        assert_eq!(char_poly(&m), CubicPoly::real(-6.0, 11.0, -6.0));
        let p = CubicPoly::real(-6.0, 11.0, -6.0);
        let a = char_poly(&Matrix3::companion(&p));
        assert!((a.b - p.b).norm() + (a.c - p.c).norm() + (a.d - p.d).norm() < 1e-14);
        let ones = Matrix3::from_real([[1.; 3]; 3]);
        assert_eq!(char_poly(&ones), CubicPoly::real(-3.0, 0.0, 0.0));
    }

    #[test]
    fn inverse_and_permutation() {
        let m = Matrix3::from_real([[2., 1., 0.], [1., 3., 1.], [0., 1., 4.]]);
        let prod = m.mul(&m.inverse().unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((prod.get(i, j) - Complex::new(e, 0.0)).norm() < 1e-14);
            }
        }
        let p = m.permuted([2, 0, 1]);
        assert_eq!(p.trace(), m.trace());
        assert!((p.det() - m.det()).norm() < 1e-13);
        assert_eq!(char_poly(&p), char_poly(&m));
    }
}
