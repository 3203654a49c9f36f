//! Printed formulas that fail the numerical audit, and their corrections.
//!
//! Production code uses the corrected form of each. The printed form can be
//! switched back on, all at once ([`FormulaVariant::AsPrinted`]) or one at a
//! time, to reproduce the failure.

use serde::{Deserialize, Serialize};

use crate::invariants::FormulaVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Erratum {
    /// `e2`: `3/8 (c2 - c1)^2` should be `3/8 (c2 - c1^2)`.
    E2Square,
    /// `n1`: the term `c2 c1` should be `c2 e1`.
    N1Term,
    /// `n3`: `c1 e2 e4` should be `c1 c2 e4`.
    N3Term,
    /// `n8`: `e2 e4` should be `c2 e4`.
    N8Term,
    /// `n4`: `n2 / d3` should be `n2 / f3`.
    N4Divisor,
    /// `l3`: re-derived as `(l1^2 - l2^2)/4 + l5 + c1 l2 - 3 c2`.
    L3,
    /// `R1`, `R2`: `sqrt(-Delta_o)` must be `i sqrt(Delta_o)`.
    SqrtNegDeltaO,
    /// `o`: `sqrt(-3 Delta_o)` must be `sqrt(-3) sqrt(Delta_o)`.
    SqrtNegThreeDeltaO,
}

impl Erratum {
    pub const ALL: [Erratum; 8] = [
        Erratum::E2Square,
        Erratum::N1Term,
        Erratum::N3Term,
        Erratum::N8Term,
        Erratum::N4Divisor,
        Erratum::L3,
        Erratum::SqrtNegDeltaO,
        Erratum::SqrtNegThreeDeltaO,
    ];

    /// Errata living in the matrix coefficient chain.
    pub const CHAIN: [Erratum; 6] =
        [Erratum::E2Square, Erratum::N1Term, Erratum::N3Term, Erratum::N8Term, Erratum::N4Divisor, Erratum::L3];
}

/// Which printed forms are active.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formulas {
    pub variant: FormulaVariant,
    /// With [`FormulaVariant::Corrected`], revert only this one.
    pub printed: Option<Erratum>,
}

impl Formulas {
    pub const fn as_printed() -> Self {
        Self { variant: FormulaVariant::AsPrinted, printed: None }
    }

    pub const fn only(e: Erratum) -> Self {
        Self { variant: FormulaVariant::Corrected, printed: Some(e) }
    }

    #[inline]
    pub fn printed(&self, e: Erratum) -> bool {
        self.variant == FormulaVariant::AsPrinted || self.printed == Some(e)
    }
}
