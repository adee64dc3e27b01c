//! The classical series rings as (monoid, action shape) bundles.
//!
//! | preset | ring |
//! |---|---|
//! | `corollary4` | `R[[x; α]]` |
//! | `corollary5` | `R[[x, x⁻¹; α]]` |
//! | `corollary6-*` | `R[[x, y; α, β]]` and its Laurent version, lex or reverse lex |
//! | `corollary7` | `R` with Dirichlet convolution over `(ℕ≥1, ·)` |

use std::time::Instant;

use crate::harness::theorem::{condition2_holds, Condition2Mode};
use crate::harness::PropertyReport;
use crate::monoid::{MonoidKind, OrderedMonoid};
use crate::ring::{FiniteRing, RingAut};
use crate::series::{OmegaAction, SeriesRing};
use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionShape {
    /// `ω_1 = α`.
    Single,
    /// `ω_{(1,0)} = α`, `ω_{(0,1)} = β` with `αβ = βα`.
    CommutingPair,
    /// `ω` is the identity everywhere.
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorollaryPreset {
    pub name: &'static str,
    pub corollary: u8,
    pub monoid: MonoidKind,
    pub shape: ActionShape,
}

pub fn corollary_presets() -> Vec<CorollaryPreset> {
    use ActionShape::*;
    use MonoidKind::*;
    let p = |name, corollary, monoid, shape| CorollaryPreset {
        name,
        corollary,
        monoid,
        shape,
    };
    vec![
        p("corollary4", 4, NatAdd, Single),
        p("corollary5", 5, IntAdd, Single),
        p("corollary6-lex", 6, NatPairLex, CommutingPair),
        p("corollary6-revlex", 6, NatPairRevLex, CommutingPair),
        p("corollary6-laurent-lex", 6, IntPairLex, CommutingPair),
        p("corollary6-laurent-revlex", 6, IntPairRevLex, CommutingPair),
        p("corollary7", 7, NatMulDirichlet, Trivial),
    ]
}

pub fn preset(name: &str) -> Result<CorollaryPreset> {
    corollary_presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownName(format!("preset '{name}'")))
}

impl CorollaryPreset {
    /// Builds the series ring. `beta` is only used by pair presets; a
    /// non-identity automorphism passed to a slot the shape does not have is
    /// rejected.
    pub fn instantiate(&self, ring: &FiniteRing, alpha: &RingAut, beta: &RingAut) -> Result<SeriesRing> {
        let monoid = OrderedMonoid::new(self.monoid);
        let unused = |slot: &str, a: &RingAut| {
            if a.is_identity() {
                Ok(())
            } else {
                Err(Error::InvalidAction(format!(
                    "{} takes no {slot} automorphism",
                    self.name
                )))
            }
        };
        let action = match self.shape {
            ActionShape::Single => {
                unused("beta", beta)?;
                OmegaAction::single(ring, monoid, alpha.clone())?
            }
            ActionShape::CommutingPair => OmegaAction::pair(ring, monoid, alpha.clone(), beta.clone())?,
            ActionShape::Trivial => {
                unused("alpha", alpha)?;
                unused("beta", beta)?;
                OmegaAction::trivial(ring, monoid)
            }
        };
        Ok(SeriesRing::new(action))
    }

    /// The orbit condition for the preset's series ring, exhaustive when the ring
    /// fits the budget and sampled otherwise.
    pub fn run(
        &self,
        ring: &FiniteRing,
        alpha: &RingAut,
        beta: &RingAut,
        limits: &Limits,
        seed: u64,
    ) -> Result<PropertyReport> {
        let start = Instant::now();
        let series = self.instantiate(ring, alpha, beta)?;
        let mode = if ring.size() <= limits.condition2_exhaustive_cap {
            Condition2Mode::Exhaustive
        } else {
            Condition2Mode::Sampled
        };
        let mut report = condition2_holds(series.action(), mode, limits, seed)?;
        report.property = self.name.to_string();
        Ok(report.timed(start))
    }
}
