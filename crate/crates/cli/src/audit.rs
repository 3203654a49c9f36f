//! Seeded audit of the matrix identities and of the uniform solver's
//! cube equalities, written as one JSON report.

use serde::Serialize;
use uniform_cubic::eigen3::{
    audit_identities_with, coeff_chain, AuditOptions, AuditReport, ChainOptions, Matrix3, DEFAULT_STARTS,
};
use uniform_cubic::invariants::InvariantOptions;
use uniform_cubic::sampling::Sampler;
use uniform_cubic::uniform::uniform_roots_with;
use uniform_cubic::{cube_equality_precise, match_roots, tol, Complex, CubicPoly, Formulas};

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditConfig {
    pub count: usize,
    pub seed: u64,
    /// Formula selection shared by the matrix chain and the uniform solver.
    pub chain: ChainOptions,
}

/// Worst case of one scalar check over the ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub threshold: f64,
    pub evaluations: usize,
    pub failures: usize,
    pub worst: f64,
    pub worst_instance: Option<CubicPoly>,
}

impl Check {
    fn new(threshold: f64) -> Self {
        Self { threshold, evaluations: 0, failures: 0, worst: 0.0, worst_instance: None }
    }

    fn record(&mut self, value: f64, p: &CubicPoly) {
        self.evaluations += 1;
        let value = if value.is_nan() { f64::INFINITY } else { value };
        if value > self.threshold {
            self.failures += 1;
        }
        if value > self.worst || self.worst_instance.is_none() {
            self.worst = value;
            self.worst_instance = Some(*p);
        }
    }

    pub fn failure_rate(&self) -> f64 {
        if self.evaluations == 0 {
            0.0
        } else {
            self.failures as f64 / self.evaluations as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformAudit {
    pub instances: usize,
    /// Inputs inside a zero-band.
    pub skipped: usize,
    /// Matched distance to the constructed roots, relative to their scale.
    pub roots: Check,
    /// Cube equalities behind the phase factors, in double precision.
    pub cube_equality: Check,
    /// The same, re-evaluated in double-double.
    pub cube_equality_precise: Check,
    /// Unrationalised vs phase-corrected roots, relative to the root scale.
    pub raw_vs_final: Check,
    /// `l_o` against the centre `(l1 o + l2) / 6` of the companion
    /// matrix's l-cubic at the solver's `o`, relative to `max(1, |l_o|)`.
    pub o_pairing: Check,
}

/// An identity or check that fails on more than the tolerated fraction of
/// the ensemble, with its worst instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrataCandidate {
    pub identity: String,
    pub failures: usize,
    pub evaluations: usize,
    pub worst: f64,
    pub instance: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRun {
    pub config: AuditConfig,
    pub eigen3: AuditReport,
    pub uniform: UniformAudit,
    pub errata: Vec<ErrataCandidate>,
}

fn audit_uniform(count: usize, seed: u64, formulas: Formulas) -> UniformAudit {
    let mut s = Sampler::new(seed);
    let opts = InvariantOptions { formulas, ..Default::default() };
    let mut out = UniformAudit {
        instances: count,
        skipped: 0,
        roots: Check::new(tol::MULTIPLICITY_DISTANCE),
        cube_equality: Check::new(tol::CUBE_EQUALITY),
        cube_equality_precise: Check::new(tol::CUBE_EQUALITY),
        raw_vs_final: Check::new(tol::RAW_FINAL_AGREEMENT),
        o_pairing: Check::new(tol::AUDIT_RESIDUAL),
    };
    for _ in 0..count {
        let (r, p) = s.random_cubic();
        let Ok((rs, trace)) = uniform_roots_with(&p, opts) else {
            out.skipped += 1;
            continue;
        };
        let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
        out.roots.record(match_roots(&rs.roots, &r) / scale, &p);
        out.cube_equality.record(trace.cube_equality[0].max(trace.cube_equality[1]), &p);
        let precise = cube_equality_precise(&p, formulas);
        out.cube_equality_precise.record(precise[0].max(precise[1]), &p);
        out.raw_vs_final.record(match_roots(&trace.raw_roots, &trace.final_roots) / scale, &p);
        if let Ok(ch) = coeff_chain(&Matrix3::companion(&p), Complex::new(0.0, 0.0)) {
            let (o, l_o) = (trace.inv.o, trace.inv.l_o);
            let centre = (ch.l(1) * o + ch.l(2)) / 6.0;
            out.o_pairing.record((centre - l_o).norm() / l_o.norm().max(1.0), &p);
        }
    }
    out
}

fn candidates(eigen3: &AuditReport, uniform: &UniformAudit) -> Result<Vec<ErrataCandidate>, HarnessError> {
    let mut out = Vec::new();
    for (name, stats) in &eigen3.identities {
        if stats.flagged() {
            out.push(ErrataCandidate {
                identity: name.clone(),
                failures: stats.failures,
                evaluations: stats.evaluations,
                worst: stats.max_residual,
                instance: serde_json::to_value(&stats.worst)?,
            });
        }
    }
    // The double-precision cube equality is a diagnostic; its double-double
    // re-evaluation is what decides.
    let checks = [
        ("uniform-roots", &uniform.roots),
        ("cube-equality", &uniform.cube_equality_precise),
        ("raw-vs-final", &uniform.raw_vs_final),
        ("o-pairing", &uniform.o_pairing),
    ];
    for (name, check) in checks {
        if check.failure_rate() > tol::AUDIT_FAILURE_RATE {
            out.push(ErrataCandidate {
                identity: name.into(),
                failures: check.failures,
                evaluations: check.evaluations,
                worst: check.worst,
                instance: serde_json::to_value(check.worst_instance)?,
            });
        }
    }
    Ok(out)
}

/// Audits `count` random (matrix, a) pairs and `count` constructed cubics.
pub fn run_audit(cfg: &AuditConfig) -> Result<AuditRun, HarnessError> {
    if cfg.count == 0 {
        return Err(HarnessError::InvalidArgument("audit count must be at least 1".into()));
    }
    let opts = AuditOptions { chain: cfg.chain };
    let mut eigen3 = AuditReport::new(opts);
    let mut s = Sampler::new(cfg.seed);
    for _ in 0..cfg.count {
        let m = s.random_matrix();
        let a = s.box_point(1.0);
        eigen3.merge(audit_identities_with(&m, a, DEFAULT_STARTS, opts));
    }
    let uniform = audit_uniform(cfg.count, cfg.seed.wrapping_add(1), cfg.chain.formulas);
    let errata = candidates(&eigen3, &uniform)?;
    Ok(AuditRun { config: *cfg, eigen3, uniform, errata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use uniform_cubic::eigen3::InjectedTypo;

    #[test]
    fn healthy_formulas_have_no_errata() {
        let run = run_audit(&AuditConfig { count: 10, seed: 1, chain: ChainOptions::default() }).unwrap();
        assert!(run.errata.is_empty(), "{:?}", run.errata.iter().map(|e| &e.identity).collect::<Vec<_>>());
    }

    #[test]
    fn typo_is_reported_with_an_instance() {
        let chain = ChainOptions::with_typo(InjectedTypo::FlipE2Sign);
        let run = run_audit(&AuditConfig { count: 5, seed: 1, chain }).unwrap();
        assert!(!run.errata.is_empty());
        assert!(run.errata.iter().all(|e| !e.instance.is_null()));
    }
}
