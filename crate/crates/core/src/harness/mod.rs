//! Ring-property predicates and mechanical checks of the annihilator results
//! for skew generalized power series rings.
//!
//! Every check returns a [`PropertyReport`]. A report with a false verdict
//! always carries a concrete counterexample; a true verdict carries the
//! witnesses needed to replay it (see [`replay`]).

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::monoid::MonoidElem;
use crate::ring::Elem;

pub mod gallery;
pub mod predicates;
pub mod presets;
pub mod random;
pub mod replay;
pub mod theorem;

pub use predicates::{is_left_app, is_left_pq_baer, is_quasi_baer, is_reduced, is_right_pp};
pub use presets::{corollary_presets, ActionShape, CorollaryPreset};
pub use theorem::{
    check_lemma1, check_lemma2_necessity, condition2_holds, construct_theorem3_witness, extract_cascade_witnesses,
    lemma1_harness, theorem3_coherence, witness_path_agreement, CascadeStep, Condition2Mode, Theorem3Witness,
    WitnessPath,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The property holds.
    Holds,
    /// The property fails; the evidence is a counterexample.
    Fails,
    /// A lemma's hypotheses do not hold, so there is nothing to check.
    Vacuous,
    /// A proved implication was contradicted: a bug or a wrong hypothesis.
    Alarm,
}

impl Verdict {
    pub fn from_bool(holds: bool) -> Verdict {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// Annihilator ideal of some source set, with a right unit for each member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorWitness {
    pub source: Vec<Elem>,
    pub annihilator: Vec<Elem>,
    pub witnesses: Vec<(Elem, Elem)>,
}

/// An annihilator together with the idempotent generating it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWitness {
    pub source: Vec<Elem>,
    pub annihilator: Vec<Elem>,
    pub idempotent: Elem,
}

/// `b ∈ l_R(Σ_s Rω_s(a))` with no right unit inside that annihilator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub a: Elem,
    pub b: Elem,
    pub annihilator: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetRun {
    pub preset: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    None,
    AnnihilatorWitnesses {
        entries: Vec<AnnihilatorWitness>,
    },
    /// `l_R(R·element)` is not right s-unital: `failing_element` has no right unit.
    AnnihilatorFailure {
        element: Elem,
        annihilator: Vec<Elem>,
        failing_element: Elem,
    },
    IdempotentGenerators {
        entries: Vec<GeneratorWitness>,
    },
    NoIdempotentGenerator {
        source: Vec<Elem>,
        annihilator: Vec<Elem>,
    },
    Nilpotent {
        element: Elem,
    },
    Condition2Witnesses {
        exhaustive: bool,
        subsets_checked: u64,
        singletons_hold: bool,
        ideals: Vec<AnnihilatorWitness>,
    },
    Condition2Failure {
        exhaustive: bool,
        subset: Vec<Elem>,
        annihilator: Vec<Elem>,
        failing_element: Elem,
        singletons_hold: bool,
    },
    Lemma1Holds {
        checked: u64,
    },
    Lemma1Violation {
        u: MonoidElem,
        v: MonoidElem,
        s: MonoidElem,
        r: Elem,
        value: Elem,
    },
    PreconditionFailed {
        reason: String,
    },
    Obstructions {
        pairs: Vec<Obstruction>,
    },
    Theorem3 {
        witness: Theorem3Witness,
    },
    Cascade {
        w: MonoidElem,
        steps: Vec<CascadeStep>,
    },
    Trials {
        trials: u64,
        passed: u64,
        nontrivial: u64,
    },
    Presets {
        runs: Vec<PresetRun>,
    },
    Alarm {
        message: String,
    },
}

/// Outcome of one check on one subject.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyReport {
    pub subject: String,
    pub property: String,
    pub verdict: Verdict,
    pub evidence: Evidence,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropertyReport {
    pub fn new(subject: impl Into<String>, property: impl Into<String>, verdict: Verdict, evidence: Evidence) -> Self {
        PropertyReport {
            subject: subject.into(),
            property: property.into(),
            verdict,
            evidence,
            elapsed: Duration::ZERO,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub(crate) fn timed(mut self, start: std::time::Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}
