//! Skew generalized power series rings `[[R^{S,≤}, ω]]` over finite
//! coefficient rings, together with exact checkers for annihilator
//! conditions: right s-unital ideals, the left APP property and the
//! series-ring characterisation of left APP in terms of `ω`-orbit ideals.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: finite unital rings, automorphisms, idempotents.
//! * [`monoid`]: strictly totally ordered monoids (`ℕ`, `ℤ`, pairs, `(ℕ, ·)`).
//! * [`series`]: the action `ω : S → Aut(R)` and finitely supported series.
//! * [`ideal`]: annihilators, generated left ideals, s-unital tests.
//! * [`harness`]: ring-property predicates and the lemma/theorem checks.
//!
//! Scans over subsets, elements and random trials run through [`exec`], which
//! uses rayon when the `parallel` feature is enabled.

pub mod error;
pub mod exec;
pub mod harness;
pub mod ideal;
pub mod monoid;
pub mod ring;
pub mod series;

pub use error::{Error, Result};
pub use exec::Exec;
pub use ideal::{IdealFlavor, IdealSet, SUnitalCheck};
pub use monoid::{MonoidElem, MonoidInterval, MonoidKind, OrderVariant, OrderedMonoid};
pub use ring::{Elem, FiniteRing, RingAut};
pub use series::{OmegaAction, SeriesRing, SkewSeries};

/// Tunable caps and budgets. All searches read their limits from here so that
/// tests can pin them and users can raise them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring the factories will build.
    pub ring_size_cap: usize,
    /// Rings up to this size get materialised addition/multiplication tables.
    pub table_threshold: usize,
    /// Axiom validation is exhaustive up to this size and sampled above it.
    pub exhaustive_validation_cap: usize,
    /// Largest ring for exhaustive automorphism search.
    pub automorphism_search_cap: usize,
    /// Largest ring for which all left ideals are enumerated (quasi-Baer test).
    pub left_ideal_enumeration_cap: usize,
    /// Largest ring for which the orbit condition is checked over every subset.
    pub condition2_exhaustive_cap: usize,
    /// Random subsets added in sampled orbit condition mode.
    pub sampled_subsets: usize,
    /// Coordinate bound for the supports of random series; `None` picks a
    /// per-monoid default.
    pub sample_window: Option<i64>,
    pub exec: Exec,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ring_size_cap: 4096,
            table_threshold: 256,
            exhaustive_validation_cap: 64,
            automorphism_search_cap: 64,
            left_ideal_enumeration_cap: 16,
            condition2_exhaustive_cap: 16,
            sampled_subsets: 1000,
            sample_window: None,
            exec: Exec::default(),
        }
    }
}

impl Limits {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}
