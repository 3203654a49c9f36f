//! Independent ground-truth roots by Aberth-Ehrlich simultaneous iteration.

use crate::complex::{Complex, ZERO};
use crate::error::{Error, Result};
use crate::poly::CubicPoly;
use crate::roots::RootSet;
use crate::tol;

/// Cauchy-style bound on the root moduli, used as the radius of the start circle.
fn start_radius(p: &CubicPoly) -> f64 {
    let r = 2.0 * p.b.norm().max(p.c.norm().sqrt()).max(p.d.norm().cbrt());
    if r == 0.0 {
        1.0
    } else {
        r
    }
}

fn iterate(p: &CubicPoly, mut z: [Complex; 3], scale: f64) -> std::result::Result<[Complex; 3], Vec<f64>> {
    let mut trace = Vec::with_capacity(tol::ORACLE_MAX_ITER);
    for _ in 0..tol::ORACLE_MAX_ITER {
        let mut step = 0.0f64;
        for i in 0..3 {
            let f = p.eval(z[i]);
            if f == ZERO {
                continue;
            }
            let newton = f / p.eval_derivative(z[i]);
            let repulsion: Complex = (0..3)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = newton / (Complex::new(1.0, 0.0) - newton * repulsion);
            let w = if w.re.is_finite() && w.im.is_finite() { w } else { newton };
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] -= w;
            step = step.max(w.norm());
        }
        // Near rounding level the update stops shrinking and wanders; that
        // is as close as double precision gets.
        let stalled = step < tol::ORACLE_STALL * scale && trace.last().is_some_and(|&prev| step >= 0.5 * prev);
        trace.push(step);
        if step < tol::ORACLE_STEP * scale || stalled {
            return Ok(z);
        }
    }
    Err(trace)
}

fn initial_guesses(p: &CubicPoly, radius: f64, phase: f64) -> [Complex; 3] {
    let centre = -p.b / 3.0;
    // non-symmetric offset angle so no guess starts on a symmetry axis
    [0.0, 1.0, 2.0].map(|k: f64| {
        let t = phase + k * std::f64::consts::TAU / 3.0;
        centre + Complex::from_polar(radius, t)
    })
}

/// Roots by Aberth-Ehrlich iteration from a circle of starts.
///
/// On stall the iteration is restarted once from perturbed guesses before
/// reporting [`Error::NonConvergence`].
pub fn oracle_roots(p: &CubicPoly) -> Result<RootSet> {
    let radius = start_radius(p);
    let scale = p.root_scale();
    match iterate(p, initial_guesses(p, radius, 0.4), scale) {
        Ok(z) => Ok(RootSet::new(p, z)),
        Err(_) => match iterate(p, initial_guesses(p, radius * 1.37, 1.1), scale) {
            Ok(z) => Ok(RootSet::new(p, z)),
            Err(trace) => Err(Error::NonConvergence {
                iterations: trace.len(),
                last_update: trace.last().copied().unwrap_or(f64::NAN),
                trace,
            }),
        },
    }
}
