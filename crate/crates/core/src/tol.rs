//! Tolerances shared across modules.
//!
//! Bands on weighted-homogeneous quantities are relative: a quantity of
//! weight `w` in the roots is compared against `band * root_scale^w`.

/// Bound on the scaled residual `|p(x)| / (max(1,|x|)^3 * coeff_scale)`.
pub const RESIDUAL_BOUND: f64 = 1e-8;

/// Zero-band for denominators and degeneracy checks.
pub const ZERO_BAND: f64 = 1e-12;

/// Two roots are double candidates when `|x_i - x_j| <= this * max(1, |x_i|)`.
pub const MULTIPLICITY_DISTANCE: f64 = 1e-6;

/// ... and `|discriminant| <= this * root_scale^6`.
pub const MULTIPLICITY_DISCRIMINANT: f64 = 1e-8;

/// The double-root criterion fires when its magnitude is `<= this * root_scale`.
pub const CRITERION: f64 = 1e-8;

/// Agreement between the two algebraic forms of the uniform roots.
pub const RAW_FINAL_AGREEMENT: f64 = 1e-10;

/// Relative tolerance of the cube-equalities behind the phase factors.
pub const CUBE_EQUALITY: f64 = 1e-8;

/// Oracle convergence: update norm below `this * scale`.
pub const ORACLE_STEP: f64 = 1e-14;
/// Updates below this (relative) that stop shrinking count as converged.
pub const ORACLE_STALL: f64 = 1e-10;
pub const ORACLE_MAX_ITER: usize = 200;

/// Identity-audit residual threshold (relative to the equation's term scale).
pub const AUDIT_RESIDUAL: f64 = 1e-8;

/// Fraction of instances an identity may fail before it is flagged.
pub const AUDIT_FAILURE_RATE: f64 = 1e-3;
