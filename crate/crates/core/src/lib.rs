//! Roots of monic complex cubics `x^3 + b x^2 + c x + d` from a single
//! branch-free closed form, the spectrum of general 3x3 complex matrices
//! through a parametrised change of variable, and the numerical machinery
//! used to check both: a Cardano reference, an Aberth-Ehrlich oracle and
//! an identity audit.

mod algebra;
pub mod cardano;
pub mod complex;
pub mod eigen3;
pub mod errata;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod poly;
pub mod precise;
pub mod roots;
pub mod sampling;
pub mod tol;
pub mod uniform;

pub use cardano::{cardano_reference, cardano_with_case, CardanoCase};
pub use complex::Complex;
pub use eigen3::{char_poly, spectrum, Matrix3, Spectrum, SpectrumMethod};
pub use errata::{Erratum, Formulas};
pub use error::{Error, Result};
pub use invariants::{compute_invariants, compute_invariants_with, discriminant, CubicInvariants, FormulaVariant};
pub use oracle::oracle_roots;
pub use poly::CubicPoly;
pub use precise::cube_equality_precise;
pub use roots::{match_roots, Multiplicity, RootSet};
pub use uniform::{double_root_criterion, double_root_criterion_with, uniform_roots, CriterionOutcome, UniformTrace, Verdict};
