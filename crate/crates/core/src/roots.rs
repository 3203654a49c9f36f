use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::invariants::discriminant;
use crate::poly::CubicPoly;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplicity {
    Simple,
    Double,
    Triple,
}

/// Three roots of a cubic with scaled residuals and multiplicity tags.
///
/// Roots are stored sorted lexicographically by `(re, im)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: [Complex; 3],
    /// `|p(x)| / (max(1,|x|)^3 * coeff_scale)` per root.
    pub residuals: [f64; 3],
    pub multiplicity: [Multiplicity; 3],
}

/// Scaled residual used by the module-wide residual bound.
pub fn scaled_residual(p: &CubicPoly, x: Complex) -> f64 {
    p.eval(x).norm() / (x.norm().max(1.0).powi(3) * p.coeff_scale())
}

pub fn lexicographic(a: &Complex, b: &Complex) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl RootSet {
    /// Sorts `roots`, computes residuals against `p` and tags multiplicities.
    pub fn new(p: &CubicPoly, mut roots: [Complex; 3]) -> Self {
        roots.sort_by(lexicographic);
        let residuals = roots.map(|x| scaled_residual(p, x));
        let multiplicity = tag_multiplicities(p, &roots);
        Self { roots, residuals, multiplicity }
    }

    /// A root set that is not attached to any polynomial (residuals zero,
    /// all simple). Used for construction roots and comparisons.
    pub fn bare(mut roots: [Complex; 3]) -> Self {
        roots.sort_by(lexicographic);
        Self { roots, residuals: [0.0; 3], multiplicity: [Multiplicity::Simple; 3] }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn within_residual_bound(&self) -> bool {
        self.residuals.iter().all(|r| *r <= tol::RESIDUAL_BOUND)
    }

    pub fn max_abs(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn tag_multiplicities(p: &CubicPoly, r: &[Complex; 3]) -> [Multiplicity; 3] {
    use Multiplicity::*;
    let rho = p.root_scale();
    if discriminant(p).norm() > tol::MULTIPLICITY_DISCRIMINANT * rho.powi(6) {
        return [Simple; 3];
    }
    let close = |i: usize, j: usize| {
        (r[i] - r[j]).norm() <= tol::MULTIPLICITY_DISTANCE * r[i].norm().max(1.0)
    };
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let n_close = pairs.iter().filter(|(i, j)| close(*i, *j)).count();
    if n_close == 3 {
        return [Triple; 3];
    }
    // tag the closest qualifying pair; at most one pair can be double
    let best = pairs
        .iter()
        .filter(|(i, j)| close(*i, *j))
        .min_by(|a, b| (r[a.0] - r[a.1]).norm().total_cmp(&(r[b.0] - r[b.1]).norm()));
    let mut tags = [Simple; 3];
    if let Some(&(i, j)) = best {
        tags[i] = Double;
        tags[j] = Double;
    }
    tags
}

const PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Minimum over the six pairings of the maximum pairwise distance.
pub fn match_roots(a: &[Complex; 3], b: &[Complex; 3]) -> f64 {
    PERMUTATIONS
        .iter()
        .map(|s| (0..3).map(|i| (a[i] - b[s[i]]).norm()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

pub fn match_rootsets(a: &RootSet, b: &RootSet) -> f64 {
    match_roots(&a.roots, &b.roots)
}

/// `(|sum x + b|, |sum_{i<j} x_i x_j - c|, |prod x + d|)`.
pub fn vieta_residuals(p: &CubicPoly, rs: &RootSet) -> (f64, f64, f64) {
    let [x, y, z] = rs.roots;
    (
        (x + y + z + p.b).norm(),
        (x * y + x * z + y * z - p.c).norm(),
        (x * y * z + p.d).norm(),
    )
}
