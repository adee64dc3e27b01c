//! Re-verification of recorded evidence from scratch.

use crate::harness::predicates::annihilator_of_principal;
use crate::harness::Evidence;
use crate::ideal::{
    left_annihilator, left_ideal_generated, orbit_annihilator, right_annihilator, right_ideal_generated,
};
use crate::ring::{Elem, FiniteRing};
use crate::series::SeriesRing;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replay {
    Confirmed,
    Refuted(String),
    /// The evidence kind carries nothing that can be checked alone.
    NotReplayable,
}

impl Replay {
    pub fn is_confirmed(&self) -> bool {
        *self == Replay::Confirmed
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn in_range(ring: &FiniteRing, xs: &[Elem]) -> std::result::Result<(), String> {
    match xs.iter().find(|&&x| !ring.contains(x)) {
        Some(x) => Err(format!("element {x} is out of range")),
        None => Ok(()),
    }
}

fn no_unit(ring: &FiniteRing, ann: &[Elem], b: Elem) -> std::result::Result<(), String> {
    check(ann.contains(&b), || format!("{b} is not in the annihilator"))?;
    match ann.iter().find(|&&x| ring.mul(b, x) == b) {
        Some(x) => Err(format!("{x} is a right unit for {b}")),
        None => Ok(()),
    }
}

fn units_valid(ring: &FiniteRing, ann: &[Elem], witnesses: &[(Elem, Elem)]) -> std::result::Result<(), String> {
    for &a in ann {
        let Some(&(_, x)) = witnesses.iter().find(|(m, _)| *m == a) else {
            return Err(format!("no witness recorded for {a}"));
        };
        check(ann.contains(&x) && ring.mul(a, x) == a, || {
            format!("{x} is not a right unit for {a} inside the ideal")
        })?;
    }
    Ok(())
}

/// Recomputes the ideals named in `evidence` for `property` on `series` and
/// checks that the recorded counterexample or witnesses still hold.
pub fn confirm(series: &SeriesRing, property: &str, evidence: &Evidence) -> Result<Replay> {
    let replayable = matches!(
        evidence,
        Evidence::AnnihilatorFailure { .. }
            | Evidence::AnnihilatorWitnesses { .. }
            | Evidence::IdempotentGenerators { .. }
            | Evidence::NoIdempotentGenerator { .. }
            | Evidence::Nilpotent { .. }
            | Evidence::Condition2Failure { .. }
            | Evidence::Condition2Witnesses { .. }
            | Evidence::Obstructions { .. }
            | Evidence::Theorem3 { .. }
    );
    if !replayable {
        return Ok(Replay::NotReplayable);
    }
    let ring = series.ring();
    let action = series.action();
    let outcome: std::result::Result<(), String> = (|| match evidence {
        Evidence::AnnihilatorFailure {
            element,
            annihilator,
            failing_element,
        } => {
            in_range(ring, &[*element, *failing_element])?;
            let ann = annihilator_of_principal(ring, *element);
            check(ann.members() == &annihilator[..], || {
                format!("l(R*{element}) is {:?}, report says {annihilator:?}", ann.members())
            })?;
            no_unit(ring, annihilator, *failing_element)
        }
        Evidence::AnnihilatorWitnesses { entries } => {
            for e in entries {
                in_range(ring, &e.source)?;
                let ann = match property {
                    "condition2" => orbit_annihilator(action, &e.source),
                    _ => annihilator_of_principal(ring, e.source[0]),
                };
                check(ann.members() == &e.annihilator[..], || {
                    format!("annihilator of {:?} differs", e.source)
                })?;
                units_valid(ring, &e.annihilator, &e.witnesses)?;
            }
            Ok(())
        }
        Evidence::IdempotentGenerators { entries } => {
            for e in entries {
                in_range(ring, &e.source)?;
                in_range(ring, &[e.idempotent])?;
                let x = e.idempotent;
                check(ring.mul(x, x) == x, || format!("{x} is not idempotent"))?;
                let (ann, gen) = generator_pair(ring, property, &e.source, x);
                check(ann == e.annihilator && gen == e.annihilator, || {
                    format!("{x} does not generate the annihilator of {:?}", e.source)
                })?;
            }
            Ok(())
        }
        Evidence::NoIdempotentGenerator { source, annihilator } => {
            in_range(ring, source)?;
            let (ann, _) = generator_pair(ring, property, source, ring.zero());
            check(ann == *annihilator, || format!("annihilator of {source:?} differs"))?;
            for e in ring.idempotents() {
                let (_, gen) = generator_pair(ring, property, source, e);
                check(gen != *annihilator, || format!("idempotent {e} generates it"))?;
            }
            Ok(())
        }
        Evidence::Nilpotent { element } => {
            in_range(ring, &[*element])?;
            check(
                !ring.is_zero(*element) && ring.is_zero(ring.mul(*element, *element)),
                || format!("{element} is not a nonzero square-zero element"),
            )
        }
        Evidence::Condition2Failure {
            subset,
            annihilator,
            failing_element,
            ..
        } => {
            in_range(ring, subset)?;
            let ann = orbit_annihilator(action, subset);
            check(ann.members() == &annihilator[..], || {
                format!("orbit annihilator of {subset:?} is {:?}", ann.members())
            })?;
            no_unit(ring, annihilator, *failing_element)
        }
        Evidence::Condition2Witnesses { ideals, .. } => {
            for ideal in ideals {
                in_range(ring, &ideal.annihilator)?;
                units_valid(ring, &ideal.annihilator, &ideal.witnesses)?;
            }
            Ok(())
        }
        Evidence::Obstructions { pairs } => {
            for p in pairs {
                in_range(ring, &[p.a, p.b])?;
                let ann = orbit_annihilator(action, &[p.a]);
                check(ann.members() == &p.annihilator[..], || {
                    format!("orbit annihilator of {} differs", p.a)
                })?;
                no_unit(ring, &p.annihilator, p.b)?;
                let cb = series.c(p.b).map_err(|e| e.to_string())?;
                let ca = series.c(p.a).map_err(|e| e.to_string())?;
                check(series.annihilates(&cb, &ca).map_err(|e| e.to_string())?, || {
                    format!("c_{} does not annihilate [[R]] c_{}", p.b, p.a)
                })?;
            }
            Ok(())
        }
        Evidence::Theorem3 { witness } => {
            in_range(ring, &[witness.e])?;
            check(witness.annihilator.contains(&witness.e), || {
                "e is outside the annihilator".into()
            })?;
            match witness.y.iter().find(|&&y| ring.mul(y, witness.e) != y) {
                Some(y) => Err(format!("y = {y} is not fixed by e")),
                None => Ok(()),
            }
        }
        _ => unreachable!("filtered above"),
    })();
    Ok(match outcome {
        Ok(()) => Replay::Confirmed,
        Err(m) => Replay::Refuted(m),
    })
}

/// For a generator-style property, the annihilator of `source` and the ideal
/// generated by `e` on the matching side.
fn generator_pair(ring: &FiniteRing, property: &str, source: &[Elem], e: Elem) -> (Vec<Elem>, Vec<Elem>) {
    match property {
        "right_pp" => (
            right_annihilator(ring, source).members().to_vec(),
            right_ideal_generated(ring, &[e]).members().to_vec(),
        ),
        "quasi_baer" => (
            left_annihilator(ring, source).members().to_vec(),
            left_ideal_generated(ring, &[e]).members().to_vec(),
        ),
        _ => (
            annihilator_of_principal(ring, source[0]).members().to_vec(),
            left_ideal_generated(ring, &[e]).members().to_vec(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{
        check_lemma2_necessity, condition2_holds, is_left_app, is_left_pq_baer, is_reduced, is_right_pp, Condition2Mode,
    };
    use crate::monoid::{MonoidKind, OrderedMonoid};
    use crate::series::OmegaAction;
    use crate::Limits;

    fn trivial(n: usize) -> SeriesRing {
        let ring = FiniteRing::cyclic(n).unwrap();
        SeriesRing::new(OmegaAction::trivial(&ring, OrderedMonoid::new(MonoidKind::NatAdd)))
    }

    #[test]
    fn reports_replay() {
        let limits = Limits::default();
        for n in [4, 6, 8, 12] {
            let s = trivial(n);
            let ring = s.ring();
            for r in [
                is_left_app(ring, &limits),
                is_left_pq_baer(ring, &limits),
                is_right_pp(ring, &limits),
                is_reduced(ring),
                condition2_holds(s.action(), Condition2Mode::Exhaustive, &limits, 0).unwrap(),
                check_lemma2_necessity(&s).unwrap(),
            ] {
                let replay = confirm(&s, &r.property, &r.evidence).unwrap();
                assert!(
                    matches!(replay, Replay::Confirmed) || r.evidence == Evidence::None,
                    "Z{n} {}: {replay:?}",
                    r.property
                );
            }
        }
    }

    #[test]
    fn tampered_evidence_is_refuted() {
        let s = trivial(4);
        let bad = Evidence::AnnihilatorFailure {
            element: 1,
            annihilator: vec![0, 2],
            failing_element: 2,
        };
        assert!(matches!(confirm(&s, "left_app", &bad).unwrap(), Replay::Refuted(_)));
        let bad = Evidence::Nilpotent { element: 1 };
        assert!(matches!(confirm(&s, "reduced", &bad).unwrap(), Replay::Refuted(_)));
        let out_of_range = Evidence::Nilpotent { element: 9 };
        assert!(matches!(
            confirm(&s, "reduced", &out_of_range).unwrap(),
            Replay::Refuted(_)
        ));
        assert_eq!(confirm(&s, "x", &Evidence::None).unwrap(), Replay::NotReplayable);
    }
}
