use std::time::Instant;

use serde::Serialize;
use uniform_cubic::{
    cardano_reference, double_root_criterion_with, oracle_roots, spectrum, uniform_roots, CriterionOutcome,
    CubicInvariants, Matrix3, RootSet, SpectrumMethod,
};

use crate::input::Input;

/// Solver requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Uniform,
    Cardano,
    Oracle,
    Eigen3,
}

/// Solver that actually produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordMethod {
    Uniform,
    Cardano,
    Oracle,
    Eigen3,
    FallbackUniform,
    FallbackCardano,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveRecord {
    /// 1-based input line.
    pub line: usize,
    pub input: Input,
    pub method: RecordMethod,
    pub roots: Option<RootSet>,
    pub invariants: Option<CubicInvariants>,
    pub criterion: Option<CriterionOutcome>,
    pub residual_max: Option<f64>,
    /// `residual_max <= tol`.
    pub within_tol: Option<bool>,
    /// Zero-band that forced a fallback.
    pub degeneracy: Option<String>,
    /// Solver failure; the record carries no roots.
    pub error: Option<String>,
    pub wall_time_ns: u64,
}

impl SolveRecord {
    fn new(line: usize, input: Input, method: RecordMethod) -> Self {
        Self {
            line,
            input,
            method,
            roots: None,
            invariants: None,
            criterion: None,
            residual_max: None,
            within_tol: None,
            degeneracy: None,
            error: None,
            wall_time_ns: 0,
        }
    }

    fn with_roots(mut self, roots: RootSet, tol: f64) -> Self {
        let r = roots.max_residual();
        self.residual_max = Some(r);
        self.within_tol = Some(r <= tol);
        self.roots = Some(roots);
        self
    }

    /// The record with its timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self { wall_time_ns: 0, ..self.clone() }
    }
}

fn eigen_record(line: usize, input: Input, m: &Matrix3, tol: f64) -> SolveRecord {
    let s = spectrum(m);
    let method = match s.method {
        SpectrumMethod::Pipeline => RecordMethod::Eigen3,
        SpectrumMethod::FallbackUniform => RecordMethod::FallbackUniform,
        SpectrumMethod::FallbackCardano => RecordMethod::FallbackCardano,
    };
    let mut rec = SolveRecord::new(line, input, method);
    rec.degeneracy = s.fallback_reason.clone();
    rec.with_roots(RootSet::new(&input.polynomial(), s.eigenvalues), tol)
}

fn solve_one(line: usize, input: Input, method: Method, tol: f64) -> SolveRecord {
    let p = input.polynomial();
    match method {
        Method::Uniform => match uniform_roots(&p) {
            Ok((rs, trace)) => {
                let mut rec = SolveRecord::new(line, input, RecordMethod::Uniform).with_roots(rs, tol);
                rec.invariants = Some(trace.inv);
                rec
            }
            Err(e) => {
                let mut rec = SolveRecord::new(line, input, RecordMethod::FallbackCardano);
                rec.degeneracy = Some(e.degenerate_quantity().map_or_else(|| e.to_string(), str::to_owned));
                rec.with_roots(cardano_reference(&p), tol)
            }
        },
        Method::Cardano => SolveRecord::new(line, input, RecordMethod::Cardano).with_roots(cardano_reference(&p), tol),
        Method::Oracle => match oracle_roots(&p) {
            Ok(rs) => SolveRecord::new(line, input, RecordMethod::Oracle).with_roots(rs, tol),
            Err(e) => {
                let mut rec = SolveRecord::new(line, input, RecordMethod::Oracle);
                rec.error = Some(e.to_string());
                rec
            }
        },
        Method::Eigen3 => {
            let m = match input {
                Input::Matrix(m) => m,
                Input::Cubic(p) => Matrix3::companion(&p),
            };
            eigen_record(line, input, &m, tol)
        }
    }
}

fn timed(f: impl FnOnce() -> SolveRecord) -> SolveRecord {
    let start = Instant::now();
    let mut rec = f();
    rec.wall_time_ns = start.elapsed().as_nanos() as u64;
    rec
}

/// One record per input, in input order. Solver failures stay inside
/// their record.
pub fn run_batch(inputs: &[(usize, Input)], method: Method, tol: f64) -> Vec<SolveRecord> {
    inputs.iter().map(|&(line, input)| timed(|| solve_one(line, input, method, tol))).collect()
}

/// The double-root criterion on each input (characteristic polynomial for
/// matrices), with the uniform roots alongside.
pub fn run_check(inputs: &[(usize, Input)], tol: f64) -> Vec<SolveRecord> {
    inputs
        .iter()
        .map(|&(line, input)| {
            timed(|| {
                let mut rec = solve_one(line, input, Method::Uniform, tol);
                match double_root_criterion_with(&input.polynomial(), tol) {
                    Ok(c) => rec.criterion = Some(c),
                    Err(e) => rec.error = Some(e.to_string()),
                }
                rec
            })
        })
        .collect()
}
