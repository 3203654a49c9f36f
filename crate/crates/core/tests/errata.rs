//! Each printed formula, switched back on alone, must break the audit or
//! the solver, and the corrected form must not.

use uniform_cubic::eigen3::{audit_identities_with, AuditOptions, AuditReport, ChainOptions, InjectedTypo, DEFAULT_STARTS};
use uniform_cubic::eigen3::{coeff_chain, solve_o, Matrix3};
use uniform_cubic::invariants::{compute_invariants_with, InvariantOptions};
use uniform_cubic::sampling::Sampler;
use uniform_cubic::uniform::uniform_roots_with;
use uniform_cubic::{cube_equality_precise, match_roots, oracle_roots, Complex, CubicPoly, Erratum, Formulas};

fn audit(chain: ChainOptions, seed: u64, count: usize) -> AuditReport {
    let opts = AuditOptions { chain };
    let mut report = AuditReport::new(opts);
    let mut s = Sampler::new(seed);
    for _ in 0..count {
        let m = s.random_matrix();
        let a = s.box_point(1.0);
        report.merge(audit_identities_with(&m, a, DEFAULT_STARTS, opts));
    }
    report
}

fn assert_chain_erratum(e: Erratum, expect: &[&str]) {
    let corrected = audit(ChainOptions::default(), 11, 20);
    assert!(corrected.flagged().is_empty(), "corrected chain flagged {:?}", corrected.flagged());
    let printed = audit(ChainOptions::printed_only(e), 11, 20);
    let flagged = printed.flagged();
    for id in expect {
        assert!(flagged.contains(id), "{e:?}: {id} not flagged (flagged: {flagged:?})");
    }
}

#[test]
fn e2_square_breaks_d_equation() {
    assert_chain_erratum(Erratum::E2Square, &["d-equation", "f-equation", "r-equation-odd"]);
}

#[test]
fn n1_term_breaks_d_equation() {
    assert_chain_erratum(Erratum::N1Term, &["d-equation", "r-equation-odd", "spectrum-d-form"]);
}

#[test]
fn n3_term_breaks_f_equation() {
    assert_chain_erratum(Erratum::N3Term, &["f-equation", "r-equation-odd"]);
}

#[test]
fn n8_term_breaks_f_equation() {
    assert_chain_erratum(Erratum::N8Term, &["f-equation", "r-equation-even"]);
}

#[test]
fn n4_divisor_breaks_r_equation() {
    assert_chain_erratum(Erratum::N4Divisor, &["r-equation-even", "l-cubic"]);
}

#[test]
fn l3_breaks_l_cubic() {
    assert_chain_erratum(Erratum::L3, &["l-cubic", "b-quadratic"]);
}

/// Fraction of constructed cubics the solver gets wrong under `formulas`.
fn uniform_failure_rate(formulas: Formulas) -> f64 {
    let mut s = Sampler::new(3);
    let opts = InvariantOptions { formulas, ..Default::default() };
    let n = 2000;
    let mut bad = 0;
    for _ in 0..n {
        let (r, p) = s.random_cubic();
        let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
        match uniform_roots_with(&p, opts) {
            Ok((rs, _)) if match_roots(&rs.roots, &r) <= 1e-6 * scale => {}
            _ => bad += 1,
        }
    }
    bad as f64 / n as f64
}

#[test]
fn sqrt_neg_delta_o_breaks_roots() {
    assert!(uniform_failure_rate(Formulas::default()) < 1e-3);
    assert!(uniform_failure_rate(Formulas::only(Erratum::SqrtNegDeltaO)) > 0.2);
}

#[test]
fn sqrt_neg_delta_o_breaks_cube_equality() {
    let mut s = Sampler::new(4);
    let mut printed_bad = 0;
    for _ in 0..500 {
        let (_, p) = s.random_cubic();
        let ok = cube_equality_precise(&p, Formulas::default());
        assert!(ok[0] <= 1e-8 && ok[1] <= 1e-8, "{ok:?}");
        let gap = cube_equality_precise(&p, Formulas::only(Erratum::SqrtNegDeltaO));
        if gap[0] > 1e-8 || gap[1] > 1e-8 {
            printed_bad += 1;
        }
    }
    assert!(printed_bad > 100, "{printed_bad}");
}

/// Instances where `l_o` is not the centre `(l1 o + l2)/6` of the
/// companion chain's l-cubic at the solver's own `o`.
fn o_pairing_failures(formulas: Formulas) -> usize {
    let mut s = Sampler::new(3);
    let mut bad = 0;
    for _ in 0..1000 {
        let (_, p) = s.random_cubic();
        let inv = compute_invariants_with(&p, InvariantOptions { formulas, ..Default::default() }).unwrap();
        let ch = coeff_chain(&Matrix3::companion(&p), Complex::new(0.0, 0.0)).unwrap();
        let candidates = solve_o(&ch).unwrap();
        let gap = candidates.iter().map(|o| (o - inv.o).norm()).fold(f64::INFINITY, f64::min);
        assert!(gap <= 1e-6 * inv.o.norm().max(1.0), "o is not an o-quadratic root");
        let centre = (ch.l(1) * inv.o + ch.l(2)) / 6.0;
        if (centre - inv.l_o).norm() > 1e-6 * inv.l_o.norm().max(1.0) {
            bad += 1;
        }
    }
    bad
}

#[test]
fn sqrt_neg_three_delta_o_breaks_o_pairing() {
    assert_eq!(o_pairing_failures(Formulas::default()), 0);
    assert!(o_pairing_failures(Formulas::only(Erratum::SqrtNegThreeDeltaO)) > 200);
}

#[test]
fn injected_typo_is_detected() {
    let report = audit(ChainOptions::with_typo(InjectedTypo::FlipE2Sign), 12, 10);
    assert!(!report.flagged().is_empty());
}

#[test]
fn x3_plus_x_plus_1_witnesses_both_radicals() {
    // Delta_o = -31: sqrt(-Delta_o) and i sqrt(Delta_o) differ in sign
    let p = CubicPoly::real(0.0, 1.0, 1.0);
    let truth = oracle_roots(&p).unwrap().roots;
    let solve = |formulas| uniform_roots_with(&p, InvariantOptions { formulas, ..Default::default() }).unwrap();
    assert!(match_roots(&solve(Formulas::default()).0.roots, &truth) < 1e-14);
    assert!(match_roots(&solve(Formulas::only(Erratum::SqrtNegDeltaO)).0.roots, &truth) > 1.0);

    let ch = coeff_chain(&Matrix3::companion(&p), Complex::new(0.0, 0.0)).unwrap();
    let pairing = |formulas| {
        let inv = solve(formulas).1.inv;
        ((ch.l(1) * inv.o + ch.l(2)) / 6.0 - inv.l_o).norm()
    };
    assert!(pairing(Formulas::default()) < 1e-14);
    assert!(pairing(Formulas::only(Erratum::SqrtNegThreeDeltaO)) > 0.5);
}
