//! Annihilator-based ring properties: left APP, left p.q.-Baer, quasi-Baer,
//! right PP, reduced.
//!
//! Implications checked across the gallery: quasi-Baer ⇒ left p.q.-Baer ⇒
//! left APP, and right PP ⇒ left APP.

use std::time::Instant;

use crate::exec::map_slice;
use crate::harness::{AnnihilatorWitness, Evidence, GeneratorWitness, PropertyReport, Verdict};
use crate::ideal::{
    is_right_s_unital, left_annihilator, left_ideal_generated, left_ideals, right_annihilator, right_ideal_generated,
    IdealSet, SUnitalCheck,
};
use crate::ring::{Elem, FiniteRing};
use crate::{Limits, Result};

/// `l_R(R·a)` for one element.
pub fn annihilator_of_principal(ring: &FiniteRing, a: Elem) -> IdealSet {
    let ra = left_ideal_generated(ring, &[a]);
    left_annihilator(ring, ra.members())
}

/// Left APP: `l_R(R·a)` is right s-unital for every `a`.
pub fn is_left_app(ring: &FiniteRing, limits: &Limits) -> PropertyReport {
    let start = Instant::now();
    let elems: Vec<Elem> = ring.elements().collect();
    let results = map_slice(limits.exec, &elems, |&a| {
        let ann = annihilator_of_principal(ring, a);
        let check = is_right_s_unital(&ann);
        (a, ann, check)
    });
    let mut entries = Vec::with_capacity(results.len());
    for (a, ann, check) in results {
        match check {
            SUnitalCheck::Unital { witnesses } => entries.push(AnnihilatorWitness {
                source: vec![a],
                annihilator: ann.members().to_vec(),
                witnesses,
            }),
            SUnitalCheck::NotUnital { element } => {
                return PropertyReport::new(
                    ring.name(),
                    "left_app",
                    Verdict::Fails,
                    Evidence::AnnihilatorFailure {
                        element: a,
                        annihilator: ann.members().to_vec(),
                        failing_element: element,
                    },
                )
                .timed(start)
            }
        }
    }
    PropertyReport::new(
        ring.name(),
        "left_app",
        Verdict::Holds,
        Evidence::AnnihilatorWitnesses { entries },
    )
    .timed(start)
}

struct IdempotentIdeals {
    left: Vec<(Elem, IdealSet)>,
    right: Vec<(Elem, IdealSet)>,
}

impl IdempotentIdeals {
    fn new(ring: &FiniteRing) -> Self {
        let idem = ring.idempotents();
        IdempotentIdeals {
            left: idem.iter().map(|&e| (e, left_ideal_generated(ring, &[e]))).collect(),
            right: idem.iter().map(|&e| (e, right_ideal_generated(ring, &[e]))).collect(),
        }
    }

    fn left_generator(&self, ideal: &IdealSet) -> Option<Elem> {
        self.left.iter().find(|(_, re)| re == ideal).map(|(e, _)| *e)
    }

    fn right_generator(&self, ideal: &IdealSet) -> Option<Elem> {
        self.right.iter().find(|(_, er)| er == ideal).map(|(e, _)| *e)
    }
}

fn generator_report(
    ring: &FiniteRing,
    property: &str,
    start: Instant,
    results: Vec<(Vec<Elem>, IdealSet, Option<Elem>)>,
) -> PropertyReport {
    let mut entries = Vec::with_capacity(results.len());
    for (source, ann, gen) in results {
        match gen {
            Some(e) => entries.push(GeneratorWitness {
                source,
                annihilator: ann.members().to_vec(),
                idempotent: e,
            }),
            None => {
                return PropertyReport::new(
                    ring.name(),
                    property,
                    Verdict::Fails,
                    Evidence::NoIdempotentGenerator {
                        source,
                        annihilator: ann.members().to_vec(),
                    },
                )
                .timed(start)
            }
        }
    }
    PropertyReport::new(
        ring.name(),
        property,
        Verdict::Holds,
        Evidence::IdempotentGenerators { entries },
    )
    .timed(start)
}

/// Left p.q.-Baer: `l_R(R·a) = R·e` for an idempotent `e`, for every `a`.
pub fn is_left_pq_baer(ring: &FiniteRing, limits: &Limits) -> PropertyReport {
    let start = Instant::now();
    let gens = IdempotentIdeals::new(ring);
    let elems: Vec<Elem> = ring.elements().collect();
    let results = map_slice(limits.exec, &elems, |&a| {
        let ann = annihilator_of_principal(ring, a);
        let e = gens.left_generator(&ann);
        (vec![a], ann, e)
    });
    generator_report(ring, "left_pq_baer", start, results)
}

/// Quasi-Baer: `l_R(I) = R·e` for an idempotent `e`, for every left ideal `I`.
/// Enumerates all left ideals, so the ring size is capped.
pub fn is_quasi_baer(ring: &FiniteRing, limits: &Limits) -> Result<PropertyReport> {
    let start = Instant::now();
    let ideals = left_ideals(ring, limits.left_ideal_enumeration_cap)?;
    let gens = IdempotentIdeals::new(ring);
    let results = map_slice(limits.exec, &ideals, |ideal| {
        let ann = left_annihilator(ring, ideal.members());
        let e = gens.left_generator(&ann);
        (ideal.members().to_vec(), ann, e)
    });
    Ok(generator_report(ring, "quasi_baer", start, results))
}

/// Right PP: `r_R(a) = e·R` for an idempotent `e`, for every `a`.
pub fn is_right_pp(ring: &FiniteRing, limits: &Limits) -> PropertyReport {
    let start = Instant::now();
    let gens = IdempotentIdeals::new(ring);
    let elems: Vec<Elem> = ring.elements().collect();
    let results = map_slice(limits.exec, &elems, |&a| {
        let ann = right_annihilator(ring, &[a]);
        let e = gens.right_generator(&ann);
        (vec![a], ann, e)
    });
    generator_report(ring, "right_pp", start, results)
}

/// Reduced: no nonzero nilpotents (equivalently no nonzero `a` with `a² = 0`).
pub fn is_reduced(ring: &FiniteRing) -> PropertyReport {
    let start = Instant::now();
    let nilpotent = ring
        .elements()
        .find(|&a| !ring.is_zero(a) && ring.is_zero(ring.mul(a, a)));
    let (verdict, evidence) = match nilpotent {
        Some(element) => (Verdict::Fails, Evidence::Nilpotent { element }),
        None => (Verdict::Holds, Evidence::None),
    };
    PropertyReport::new(ring.name(), "reduced", verdict, evidence).timed(start)
}
