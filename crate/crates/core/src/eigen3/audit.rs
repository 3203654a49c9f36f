//! Numerical audit of the pipeline identities.
//!
//! For one `(M, a)` the b-equation is solved by complex Newton from a
//! circle of starts. Every identity
//! is then evaluated at each solution `(b, s)`. Residuals are relative:
//! `|sum of terms| / sum of |terms|`, so they are scale free.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{self, Complex, ZERO};
use crate::oracle::oracle_roots;
use crate::roots::match_roots;
use crate::tol;

use super::chain::{coeff_chain_with, l_cubic, resolvent_l, solve_o, ChainOptions, CoeffChain};
use super::{char_poly, spectrum_pipeline_best, Matrix3};

/// Identity names, in report order.
pub const IDENTITIES: [&str; 13] = [
    "b-equation",
    "d-equation",
    "f-equation",
    "r-equation-odd",
    "r-equation-even",
    "l-cubic",
    "b-quadratic",
    "o-quadratic",
    "eigenvalue-parametrisation",
    "b-closed-form-coverage",
    "spectrum-d-form",
    "spectrum-f-form",
    "d-f-form-agreement",
];

/// A generic `o` at which the l-cubic is also checked: it must hold for
/// every `o`, not only at the roots of the o-quadratic.
const PROBE_O: Complex = Complex::new(0.37, -0.21);

const NEWTON_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 100;
pub const DEFAULT_STARTS: usize = 12;
const EXTRANEOUS_BAND: f64 = 1e-7;
const G_DEGREE: usize = 3;
const POLISH_STEPS: usize = 8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AuditOptions {
    pub chain: ChainOptions,
}

/// A solution of the b-equation on one branch of `sqrt(Delta_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BRoot {
    pub b: Complex,
    pub sqrt_delta_p: Complex,
    /// `+1` when `sqrt_delta_p` is the principal square root, `-1` otherwise.
    pub branch: i8,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BRoots {
    pub roots: Vec<BRoot>,
    /// Common zeros of `U` and `V`.
    pub extraneous: Vec<Complex>,
    pub nonconverged: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditInstance {
    pub identity: String,
    pub residual: f64,
    pub matrix: Matrix3,
    pub a: Complex,
    pub b: Option<Complex>,
    pub sqrt_delta_p: Option<Complex>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct IdentityStats {
    pub evaluations: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub worst: Option<AuditInstance>,
}

impl IdentityStats {
    pub fn failure_rate(&self) -> f64 {
        if self.evaluations == 0 {
            0.0
        } else {
            self.failures as f64 / self.evaluations as f64
        }
    }

    pub fn flagged(&self) -> bool {
        self.failure_rate() > tol::AUDIT_FAILURE_RATE
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct AuditReport {
    pub options: AuditOptions,
    pub threshold: f64,
    pub instances: usize,
    /// Instances whose chain had a divisor in its zero-band.
    pub skipped: usize,
    /// Newton starts that hit the iteration cap, summed over instances.
    pub nonconverged_starts: usize,
    /// Zeros of the b-equation that hold for any square root (see [`find_b_roots`]).
    pub extraneous_roots: usize,
    pub identities: BTreeMap<String, IdentityStats>,
}

impl AuditReport {
    pub fn new(options: AuditOptions) -> Self {
        Self { options, threshold: tol::AUDIT_RESIDUAL, ..Default::default() }
    }

    /// Records one residual, keeping the worst instance.
    pub fn record(&mut self, identity: &str, residual: f64, instance: impl FnOnce() -> AuditInstance) {
        let threshold = self.threshold;
        let stats = self.identities.entry(identity.to_string()).or_default();
        stats.evaluations += 1;
        let bad = !(residual <= threshold);
        if bad {
            stats.failures += 1;
        }
        if bad && stats.worst.is_none() || residual > stats.max_residual || residual.is_nan() {
            if !(residual <= stats.max_residual) || stats.worst.is_none() {
                let mut inst = instance();
                inst.identity = identity.to_string();
                inst.residual = residual;
                stats.worst = Some(inst);
            }
            stats.max_residual = if residual.is_nan() { f64::INFINITY } else { stats.max_residual.max(residual) };
        }
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.instances += other.instances;
        self.skipped += other.skipped;
        self.nonconverged_starts += other.nonconverged_starts;
        self.extraneous_roots += other.extraneous_roots;
        for (name, s) in other.identities {
            let mine = self.identities.entry(name).or_default();
            mine.evaluations += s.evaluations;
            mine.failures += s.failures;
            if s.max_residual > mine.max_residual || mine.worst.is_none() {
                mine.max_residual = mine.max_residual.max(s.max_residual);
                if s.worst.is_some() {
                    mine.worst = s.worst;
                }
            }
        }
    }

    /// Identities failing on more than the allowed fraction of evaluations.
    pub fn flagged(&self) -> Vec<&str> {
        self.identities.iter().filter(|(_, s)| s.flagged()).map(|(k, _)| k.as_str()).collect()
    }

    pub fn stats(&self, identity: &str) -> Option<&IdentityStats> {
        self.identities.get(identity)
    }
}

fn relative(terms: &[Complex]) -> f64 {
    let sum: Complex = terms.iter().sum();
    let mag: f64 = terms.iter().map(|t| t.norm()).sum();
    if mag == 0.0 {
        0.0
    } else {
        sum.norm() / mag
    }
}

fn b_equation(ch: &CoeffChain, b: Complex, s: Complex) -> [Complex; 7] {
    let [ta, tb, tc, td, te] = ch.b_equation_terms();
    [ta, tb * b, tc * b * b, td * s, te * b * s, b * b * s * 0.5, -b * b * b * 0.5]
}

/// `U(b)`, `V(b)` and the size of `V`'s terms, with the b-equation
/// written as `U + V sqrt(Delta_p) = 0`.
fn split_b_equation(ch: &CoeffChain, b: Complex) -> (Complex, Complex, f64) {
    let [ta, tb, tc, td, te] = ch.b_equation_terms();
    let u = ta + tb * b + tc * b * b - b * b * b * 0.5;
    let v = td + te * b + b * b * 0.5;
    let v_mag = td.norm() + (te * b).norm() + (b * b * 0.5).norm();
    (u, v, v_mag)
}

fn poly_mul(x: &[Complex], y: &[Complex]) -> Vec<Complex> {
    let mut out = vec![ZERO; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients (ascending) of `G(b) = U^2 - V^2 Delta_p`. The `b^5` and
/// `b^4` coefficients cancel identically, so `G` is a cubic.
fn g_coefficients(ch: &CoeffChain) -> [Complex; 4] {
    let [ta, tb, tc, td, te] = ch.b_equation_terms();
    let u = [ta, tb, tc, Complex::new(-0.5, 0.0)];
    let v = [td, te, Complex::new(0.5, 0.0)];
    let dp = [ch.delta_p_constant(), (ch.c1 - ch.a) * 2.0, Complex::new(1.0, 0.0)];
    let uu = poly_mul(&u, &u);
    let vvd = poly_mul(&poly_mul(&v, &v), &dp);
    [uu[0] - vvd[0], uu[1] - vvd[1], uu[2] - vvd[2], uu[3] - vvd[3]]
}

fn eval_g(g: &[Complex; 4], b: Complex) -> (Complex, Complex, f64) {
    let val = ((g[3] * b + g[2]) * b + g[1]) * b + g[0];
    let der = (g[3] * b * 3.0 + g[2] * 2.0) * b + g[1];
    let mag = g.iter().enumerate().map(|(k, c)| c.norm() * b.norm().powi(k as i32)).sum();
    (val, der, mag)
}

/// Newton on `G`, deflated by the roots already found.
fn newton(g: &[Complex; 4], start: Complex, known: &[Complex], scale: f64) -> Option<Complex> {
    let mut b = start;
    for _ in 0..NEWTON_MAX_ITER {
        let (val, der, _) = eval_g(g, b);
        if val == ZERO {
            return Some(b);
        }
        let deflation: Complex = known.iter().map(|k| (b - k).inv()).sum();
        let step = val / (der - val * deflation);
        if !complex::is_finite(step) {
            return None;
        }
        b -= step;
        if step.norm() < NEWTON_TOL * scale {
            return Some(b);
        }
    }
    None
}

/// Newton on the b-equation itself, `U + V sqrt(Delta_p)`, following the
/// branch of the square root continuously from `s`. The cubic `G` loses
/// digits to cancellation when its roots are large; this recovers them.
fn polish(ch: &CoeffChain, mut b: Complex, mut s: Complex) -> (Complex, Complex) {
    let [_, tb, tc, _, te] = ch.b_equation_terms();
    for _ in 0..POLISH_STEPS {
        let root = complex::sqrt(ch.delta_p(b));
        let next_s = if (root - s).norm() <= (root + s).norm() { root } else { -root };
        if next_s == ZERO {
            break;
        }
        s = next_s;
        let (u, v, _) = split_b_equation(ch, b);
        let du = tb + tc * b * 2.0 - b * b * 1.5;
        let dv = te + b;
        let ddp = (b + ch.c1 - ch.a) * 2.0;
        let step = (u + v * s) / (du + dv * s + v * ddp / (s * 2.0));
        if !complex::is_finite(step) {
            break;
        }
        b -= step;
        if step.norm() <= f64::EPSILON * b.norm().max(ch.scale) {
            break;
        }
    }
    let root = complex::sqrt(ch.delta_p(b));
    let s = if (root - s).norm() <= (root + s).norm() { root } else { -root };
    (b, s)
}

/// Solutions of the b-equation, found by Newton from `starts` points on
/// the circle of radius `1 + scale` around `a`.
///
/// The square root is eliminated first: Newton runs on the cubic
/// `U^2 - V^2 Delta_p`, each converged `b` then fixes `sqrt(Delta_p) = -U/V`,
/// which may be either branch. Zeros of `V` satisfy the b-equation for
/// every value of the square root and carry no eigenvalue; they are
/// returned separately as extraneous.
pub fn find_b_roots(ch: &CoeffChain, starts: usize) -> BRoots {
    let scale = ch.scale;
    let radius = 1.0 + scale;
    let mut all: Vec<Complex> = Vec::new();
    let mut out = BRoots::default();
    let g = g_coefficients(ch);
    for k in 0..starts {
        let t = 0.3 + k as f64 * std::f64::consts::TAU / starts as f64;
        let start = ch.a + Complex::from_polar(radius, t);
        if all.len() == G_DEGREE {
            break;
        }
        let Some(b) = newton(&g, start, &all, scale) else {
            out.nonconverged += 1;
            continue;
        };
        let (u, v, v_mag) = split_b_equation(ch, b);
        let (val, _, mag) = eval_g(&g, b);
        if val.norm() > tol::AUDIT_RESIDUAL * mag {
            out.nonconverged += 1;
            continue;
        }
        all.push(b);
        if v.norm() <= EXTRANEOUS_BAND * v_mag {
            if !out.extraneous.iter().any(|x| (*x - b).norm() <= 1e-6 * scale) {
                out.extraneous.push(b);
            }
            continue;
        }
        let (b, s) = polish(ch, b, -u / v);
        if !out.roots.iter().any(|r| (r.b - b).norm() <= 1e-8 * scale) {
            let principal = complex::sqrt(ch.delta_p(b));
            let branch = if (s - principal).norm() <= (s + principal).norm() { 1 } else { -1 };
            out.roots.push(BRoot { b, sqrt_delta_p: s, branch });
        }
    }
    out
}

/// `b` belonging to the eigenvalue `p` with the plus sign, obtained by
/// solving the parametrisation for `b` directly: with `u = a - b` and
/// `g = 2 m1 - c1`, `u = ((2p - g)^2 - c1^2 - 4 d3) / (2 (2p - g - c1))`.
fn closed_form_b(ch: &CoeffChain, p: Complex) -> Complex {
    let g = ch.m1 * 2.0 - ch.c1;
    let w = p * 2.0 - g;
    let u = (w * w - ch.c1 * ch.c1 - ch.d3() * 4.0) / ((w - ch.c1) * 2.0);
    ch.a - u
}

pub fn audit_identities(m: &Matrix3, a: Complex, samples: usize) -> AuditReport {
    audit_identities_with(m, a, samples, AuditOptions::default())
}

/// Audits one `(M, a)`; `samples` is the number of Newton starts per branch.
pub fn audit_identities_with(m: &Matrix3, a: Complex, samples: usize, opts: AuditOptions) -> AuditReport {
    let mut report = AuditReport::new(opts);
    report.instances = 1;
    let ch = match coeff_chain_with(m, a, opts.chain) {
        Ok(ch) => ch,
        Err(_) => {
            report.skipped = 1;
            return report;
        }
    };
    let scale = ch.scale;
    let eigen = oracle_roots(&char_poly(m)).map(|rs| rs.roots);
    let found = find_b_roots(&ch, samples.max(1));
    report.nonconverged_starts = found.nonconverged;
    report.extraneous_roots = found.extraneous.len();
    let roots = found.roots;
    let inst = |b: Option<Complex>, s: Option<Complex>| {
        let m = *m;
        move || AuditInstance { identity: String::new(), residual: 0.0, matrix: m, a, b, sqrt_delta_p: s }
    };

    let mut os: Vec<Complex> = solve_o(&ch).unwrap_or_default();
    if let Ok(q) = solve_o(&ch) {
        let [q2, q1, q0] = ch.o_quadratic();
        for o in q {
            report.record("o-quadratic", relative(&[q2 * o * o, q1 * o, q0]), inst(None, None));
        }
    }
    let o_candidates = os.clone();
    os.push(PROBE_O);

    let (d, f, r) = (ch.d, ch.f, ch.r);
    let g = ch.m1 * 2.0 - ch.c1;
    for root in &roots {
        let (b, s) = (root.b, root.sqrt_delta_p);
        let here = || inst(Some(b), Some(s));
        report.record("b-equation", relative(&b_equation(&ch, b, s)), here());
        let d_terms = [d[0], d[1] * b, d[2] * b * b, d[3] * s, -d[2] * b * s];
        report.record("d-equation", relative(&d_terms), here());
        let f_terms = [f[0], f[1] * b, f[2] * b * b, f[3] * s, f[2] * b * s];
        report.record("f-equation", relative(&f_terms), here());
        report.record("r-equation-odd", relative(&[r[0], r[1] * b, r[2] * s, -b * s * 2.0]), here());
        report.record("r-equation-even", relative(&[r[3], r[4] * b, r[5] * s, b * b * 2.0]), here());

        for &o in &os {
            let l = -(b + o * s);
            let terms = [l * l * l * 2.0, ch.c_l(o) * l * l, ch.b_l(o) * l, ch.d_l(o)];
            debug_assert!((terms.iter().sum::<Complex>() - l_cubic(&ch, o, l)).norm() <= 1e-9 * terms[0].norm().max(1.0));
            report.record("l-cubic", relative(&terms), here());
        }
        for &o in &o_candidates {
            let l = -(b + o * s);
            let (_, rls) = resolvent_l(&ch, o);
            let Some(&rl) = rls.iter().min_by(|x, y| (**x - a - l).norm().total_cmp(&(**y - a - l).norm())) else {
                continue;
            };
            let one = Complex::new(1.0, 0.0);
            let terms = [
                (one - o * o) * b * b,
                (rl - a) * b * 2.0,
                o * o * (a - ch.c1) * b * 2.0,
                (rl - a) * (rl - a),
                -o * o * ch.delta_p_constant(),
            ];
            report.record("b-quadratic", relative(&terms), here());
        }
        if let Ok(eig) = &eigen {
            let p = (a - b + g + s) * 0.5;
            let dist = eig.iter().map(|e| (*e - p).norm()).fold(f64::INFINITY, f64::min);
            report.record("eigenvalue-parametrisation", dist / scale, here());
        }
    }

    if let Ok(eig) = &eigen {
        for p in eig {
            let b = closed_form_b(&ch, *p);
            let dist = roots.iter().map(|r| (r.b - b).norm()).fold(f64::INFINITY, f64::min);
            // b grows like 1/(2p - g - c1); measure it relative to its own size
            report.record("b-closed-form-coverage", dist / scale.max(b.norm()), inst(Some(b), None));
        }
        if let Ok(t) = spectrum_pipeline_best(m, a, opts.chain) {
            report.record("spectrum-d-form", match_roots(&t.eigenvalues, eig) / scale, inst(None, None));
            report.record("spectrum-f-form", match_roots(&t.alt_eigenvalues, eig) / scale, inst(None, None));
            report.record("d-f-form-agreement", t.alt_gap / scale, inst(None, None));
        }
    }
    report
}
