//! Open plane curves as double-occurrence words and their planar
//! realizations: faces of the complement, the endpoint distance d(γ),
//! connected sums, isolated crossings and exhaustive enumeration.

mod code;
mod enumerate;
mod map;

use thiserror::Error;

pub use code::{CurveDecomposition, OpenGaussCode};
pub use enumerate::{
    canonical_codes, double_occurrence_words, enumerate_curves, enumerate_realizations,
    first_lemma_bound, second_lemma_bound, verify_lemma_bounds, BoundKind, LemmaReport,
    LevelSummary, Violation, DEFAULT_CURVE_CAP,
};
pub use map::{realizations, realize, PlanarCurveMap, RegionGraph};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("label {label} occurs {count} time(s), expected exactly twice")]
    NotDoubleOccurrence { label: String, count: usize },
    #[error("word [{code}] has no planar realization")]
    NotRealizable { code: OpenGaussCode },
    #[error("rotation system {flips:?} for [{code}] is not planar")]
    NonPlanar {
        code: OpenGaussCode,
        flips: Vec<bool>,
    },
    #[error("expected {expected} flip bits, got {got}")]
    FlipCount { expected: usize, got: usize },
    #[error("neither γ₁(1) nor γ₂(0) lies on the outer face")]
    NotComposable,
    #[error("crossing {crossing} is not isolated")]
    NotIsolated { crossing: u32 },
    #[error("{n} crossings exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub fn parse_open_gauss(text: &str) -> Result<OpenGaussCode, CurveError> {
    OpenGaussCode::parse(text)
}

pub fn is_composite(code: &OpenGaussCode) -> CurveDecomposition {
    code.decompose()
}

/// Connected sum of two codes via their first realizations.
/// `reverse_a`/`reverse_b` traverse the summand backwards.
pub fn connected_sum(
    a: &OpenGaussCode,
    b: &OpenGaussCode,
    reverse_a: bool,
    reverse_b: bool,
) -> Result<OpenGaussCode, CurveError> {
    let ma = realize(a)?;
    let mb = realize(b)?;
    PlanarCurveMap::connected_sum(&ma, &mb, reverse_a, reverse_b).map(|m| m.code().clone())
}
