//! Throughput and accuracy of the three cubic solvers on one seeded ensemble.

use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;
use uniform_cubic::roots::scaled_residual;
use uniform_cubic::sampling::{cubic_fingerprint, Sampler};
use uniform_cubic::uniform::uniform_raw;
use uniform_cubic::{cardano_reference, oracle_roots, Complex, CubicPoly};

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    /// Product of three separated roots in the annulus `0.1 <= |x| <= 10`.
    Roots,
    /// Coefficients uniform in the square `|re|, |im| <= 5`.
    Coefficients,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchConfig {
    pub count: usize,
    pub seed: u64,
    pub distribution: Distribution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ensemble {
    pub count: usize,
    pub seed: u64,
    pub distribution: Distribution,
    /// FNV-1a of the coefficient bit patterns, hex.
    pub hash: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Percentiles {
    pub p50: f64,
    pub p99: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodStats {
    pub method: &'static str,
    /// Instances in the timing pool.
    pub timed: usize,
    /// Instances routed away from the method (excluded from `timed`).
    pub fallbacks: usize,
    /// Instances on which the method returned no roots.
    pub failures: usize,
    pub seconds: f64,
    pub throughput: f64,
    /// Scaled residual `max_k |p(x_k)| / (max(1,|x_k|)^3 coeff_scale)`.
    pub residual: Percentiles,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub ensemble: Ensemble,
    pub methods: Vec<MethodStats>,
    /// Fraction of the ensemble the uniform solver hands to Cardano.
    pub fallback_rate: f64,
}

pub fn ensemble(cfg: &BenchConfig) -> Vec<CubicPoly> {
    let mut s = Sampler::new(cfg.seed);
    (0..cfg.count)
        .map(|_| match cfg.distribution {
            Distribution::Roots => s.random_cubic().1,
            Distribution::Coefficients => CubicPoly::new(s.box_point(5.0), s.box_point(5.0), s.box_point(5.0)),
        })
        .collect()
}

/// Nearest-rank percentiles; all zero for an empty sample.
pub fn percentiles(mut v: Vec<f64>) -> Percentiles {
    if v.is_empty() {
        return Percentiles { p50: 0.0, p99: 0.0, max: 0.0 };
    }
    v.sort_by(f64::total_cmp);
    let rank = |q: f64| v[((q * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1];
    Percentiles { p50: rank(0.5), p99: rank(0.99), max: v[v.len() - 1] }
}

fn worst_residual(p: &CubicPoly, roots: &[Complex; 3]) -> f64 {
    roots.iter().map(|&x| scaled_residual(p, x)).fold(0.0, f64::max)
}

fn stats(
    method: &'static str,
    pool: &[CubicPoly],
    fallbacks: usize,
    solve: impl Fn(&CubicPoly) -> Option<[Complex; 3]>,
) -> MethodStats {
    let mut out = Vec::with_capacity(pool.len());
    let start = Instant::now();
    for p in pool {
        out.push(black_box(solve(black_box(p))));
    }
    let seconds = start.elapsed().as_secs_f64();
    let residuals: Vec<f64> = pool.iter().zip(&out).filter_map(|(p, r)| r.map(|r| worst_residual(p, &r))).collect();
    MethodStats {
        method,
        timed: pool.len(),
        fallbacks,
        failures: pool.len() - residuals.len(),
        seconds,
        throughput: if seconds > 0.0 { pool.len() as f64 / seconds } else { f64::INFINITY },
        residual: percentiles(residuals),
    }
}

/// Times uniform, Cardano and the oracle, single-threaded, over the same
/// ensemble. Inputs the uniform solver rejects are left out of its pool.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, HarnessError> {
    if cfg.count == 0 {
        return Err(HarnessError::InvalidArgument("bench count must be at least 1".into()));
    }
    let polys = ensemble(cfg);
    let uniform_pool: Vec<CubicPoly> = polys.iter().copied().filter(|p| uniform_raw(p).is_ok()).collect();
    let fallbacks = polys.len() - uniform_pool.len();
    let methods = vec![
        stats("uniform", &uniform_pool, fallbacks, |p| uniform_raw(p).ok()),
        stats("cardano", &polys, 0, |p| Some(cardano_reference(p).roots)),
        stats("oracle", &polys, 0, |p| oracle_roots(p).ok().map(|r| r.roots)),
    ];
    Ok(BenchReport {
        ensemble: Ensemble {
            count: cfg.count,
            seed: cfg.seed,
            distribution: cfg.distribution,
            hash: format!("{:016x}", cubic_fingerprint(&polys)),
        },
        methods,
        fallback_rate: fallbacks as f64 / polys.len() as f64,
    })
}
