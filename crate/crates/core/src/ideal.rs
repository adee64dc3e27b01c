//! Annihilators, generated left ideals and the right s-unital test.
//!
//! Ideals are materialised as explicit element sets, so every quantifier
//! becomes a finite loop. Witness searches scan in ascending element order and
//! return the first hit.
//!
//! A two-sided ideal `I` is right s-unital when every `a ∈ I` has some
//! `x ∈ I` with `a·x = a`; equivalently, `I` is pure as a left ideal.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::ring::{Elem, FiniteRing};
use crate::series::OmegaAction;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealFlavor {
    Left,
    Right,
    TwoSided,
    /// Additive subgroup only.
    Plain,
}

/// An additive subgroup of a finite ring, with its member set.
#[derive(Clone)]
pub struct IdealSet {
    ring: FiniteRing,
    mask: FixedBitSet,
    members: Vec<Elem>,
    flavor: IdealFlavor,
}

impl std::fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IdealSet({:?}, {:?})", self.flavor, self.members)
    }
}

impl PartialEq for IdealSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for IdealSet {}

impl IdealSet {
    /// Wraps an additively closed subset, detecting its flavor.
    pub fn new(ring: &FiniteRing, members: impl IntoIterator<Item = Elem>) -> Result<IdealSet> {
        let mut mask = FixedBitSet::with_capacity(ring.size());
        for x in members {
            ring.check_elem(x)?;
            mask.insert(x);
        }
        let set = Self::from_mask(ring, mask, IdealFlavor::Plain);
        if !set.contains(ring.zero())
            || set
                .members
                .iter()
                .any(|&a| set.members.iter().any(|&b| !set.contains(ring.add(a, b))))
        {
            return Err(Error::NotAdditivelyClosed);
        }
        let left = set.is_left_stable();
        let right = set.is_right_stable();
        let flavor = match (left, right) {
            (true, true) => IdealFlavor::TwoSided,
            (true, false) => IdealFlavor::Left,
            (false, true) => IdealFlavor::Right,
            (false, false) => IdealFlavor::Plain,
        };
        Ok(IdealSet { flavor, ..set })
    }

    pub(crate) fn from_mask(ring: &FiniteRing, mask: FixedBitSet, flavor: IdealFlavor) -> IdealSet {
        let members = mask.ones().collect();
        IdealSet {
            ring: ring.clone(),
            mask,
            members,
            flavor,
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn flavor(&self) -> IdealFlavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.contains(x)
    }

    pub fn is_subset(&self, other: &IdealSet) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole_ring(&self) -> bool {
        self.members.len() == self.ring.size()
    }

    /// `R·I ⊆ I`.
    pub fn is_left_stable(&self) -> bool {
        self.ring
            .elements()
            .all(|r| self.members.iter().all(|&a| self.contains(self.ring.mul(r, a))))
    }

    /// `I·R ⊆ I`.
    pub fn is_right_stable(&self) -> bool {
        self.ring
            .elements()
            .all(|r| self.members.iter().all(|&a| self.contains(self.ring.mul(a, r))))
    }

    pub fn intersection(&self, other: &IdealSet) -> IdealSet {
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        let flavor = if self.flavor == other.flavor {
            self.flavor
        } else {
            IdealFlavor::Plain
        };
        IdealSet::from_mask(&self.ring, mask, flavor)
    }
}

fn is_left_stable_set(ring: &FiniteRing, xs: &[Elem]) -> bool {
    let set: FixedBitSet = xs.iter().copied().collect();
    ring.elements()
        .all(|r| xs.iter().all(|&x| set.contains(ring.mul(r, x))))
}

fn is_right_stable_set(ring: &FiniteRing, xs: &[Elem]) -> bool {
    let set: FixedBitSet = xs.iter().copied().collect();
    ring.elements()
        .all(|r| xs.iter().all(|&x| set.contains(ring.mul(x, r))))
}

/// `l_R(X) = {r : r·x = 0 for all x ∈ X}`. Two-sided when `X` is closed
/// under left multiplication, a left ideal otherwise.
pub fn left_annihilator(ring: &FiniteRing, xs: &[Elem]) -> IdealSet {
    let mut mask = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        if xs.iter().all(|&x| ring.is_zero(ring.mul(r, x))) {
            mask.insert(r);
        }
    }
    let flavor = if is_left_stable_set(ring, xs) {
        IdealFlavor::TwoSided
    } else {
        IdealFlavor::Left
    };
    IdealSet::from_mask(ring, mask, flavor)
}

/// `r_R(X) = {r : x·r = 0 for all x ∈ X}`.
pub fn right_annihilator(ring: &FiniteRing, xs: &[Elem]) -> IdealSet {
    let mut mask = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        if xs.iter().all(|&x| ring.is_zero(ring.mul(x, r))) {
            mask.insert(r);
        }
    }
    let flavor = if is_right_stable_set(ring, xs) {
        IdealFlavor::TwoSided
    } else {
        IdealFlavor::Right
    };
    IdealSet::from_mask(ring, mask, flavor)
}

/// Additive subgroup generated by `gens`.
pub fn additive_closure(ring: &FiniteRing, gens: impl IntoIterator<Item = Elem>) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(ring.size());
    mask.insert(ring.zero());
    let mut members = vec![ring.zero()];
    let gens: Vec<Elem> = {
        let mut g: Vec<Elem> = gens.into_iter().collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        for &g in &gens {
            let y = ring.add(x, g);
            if !mask.put(y) {
                members.push(y);
            }
        }
        k += 1;
    }
    mask
}

/// The smallest left ideal containing `gens`: sums of products `r·a`.
pub fn left_ideal_generated(ring: &FiniteRing, gens: &[Elem]) -> IdealSet {
    let products = ring.elements().flat_map(|r| gens.iter().map(move |&a| ring.mul(r, a)));
    let mask = additive_closure(ring, products);
    IdealSet::from_mask(ring, mask, IdealFlavor::Left)
}

/// The smallest right ideal containing `gens`.
pub fn right_ideal_generated(ring: &FiniteRing, gens: &[Elem]) -> IdealSet {
    let products = ring.elements().flat_map(|r| gens.iter().map(move |&a| ring.mul(a, r)));
    let mask = additive_closure(ring, products);
    IdealSet::from_mask(ring, mask, IdealFlavor::Right)
}

/// `Σ_{a∈A} Σ_{s∈S} R·ω_s(a)`, the left ideal generated by the `ω`-orbits of `A`.
pub fn orbit_ideal(action: &OmegaAction, gens: &[Elem]) -> IdealSet {
    let mut orbit: Vec<Elem> = action
        .representatives()
        .iter()
        .flat_map(|sigma| gens.iter().map(move |&a| sigma.apply(a)))
        .collect();
    orbit.sort_unstable();
    orbit.dedup();
    left_ideal_generated(action.ring(), &orbit)
}

/// `l_R(Σ_{a∈A} Σ_s R·ω_s(a))`.
pub fn orbit_annihilator(action: &OmegaAction, gens: &[Elem]) -> IdealSet {
    let ideal = orbit_ideal(action, gens);
    let mut ann = left_annihilator(action.ring(), ideal.members());
    ann.flavor = IdealFlavor::TwoSided;
    ann
}

/// Outcome of the right s-unital test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SUnitalCheck {
    /// Every member `a` paired with the first `x` in the ideal with `a·x = a`.
    Unital { witnesses: Vec<(Elem, Elem)> },
    /// The first member with no right unit inside the ideal.
    NotUnital { element: Elem },
}

impl SUnitalCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SUnitalCheck::Unital { .. })
    }
}

/// First `x ∈ I` with `a·x = a`.
pub fn right_unit_in(ideal: &IdealSet, a: Elem) -> Option<Elem> {
    let ring = ideal.ring();
    ideal.members().iter().copied().find(|&x| ring.mul(a, x) == a)
}

pub fn is_right_s_unital(ideal: &IdealSet) -> SUnitalCheck {
    let mut witnesses = Vec::with_capacity(ideal.len());
    for &a in ideal.members() {
        match right_unit_in(ideal, a) {
            Some(x) => witnesses.push((a, x)),
            None => return SUnitalCheck::NotUnital { element: a },
        }
    }
    SUnitalCheck::Unital { witnesses }
}

/// First `x ∈ I` with `a·x = a` for every listed `a`, if any. No
/// precondition; for the empty list this is the least member, `0`.
pub fn common_right_unit(ideal: &IdealSet, subset: &[Elem]) -> Option<Elem> {
    let ring = ideal.ring();
    ideal
        .members()
        .iter()
        .copied()
        .find(|&x| subset.iter().all(|&a| ring.mul(a, x) == a))
}

/// A single right unit for finitely many elements of a right s-unital ideal.
///
/// Such a common witness always exists once every element has its own, so a
/// failed search after the precondition passed is reported as an invariant
/// violation rather than a normal result.
pub fn tominaga_common_witness(ideal: &IdealSet, subset: &[Elem]) -> Result<Elem> {
    if let SUnitalCheck::NotUnital { element } = is_right_s_unital(ideal) {
        return Err(Error::NotRightSUnital(element));
    }
    if let Some(&a) = subset.iter().find(|&&a| !ideal.contains(a)) {
        return Err(Error::HypothesisViolated(format!("{a} is not a member of the ideal")));
    }
    common_right_unit(ideal, subset).ok_or_else(|| {
        Error::InvariantViolation(format!("no common right unit for {subset:?} in a right s-unital ideal"))
    })
}

/// Every left ideal of `ring`, smallest first (by size, then members).
pub fn left_ideals(ring: &FiniteRing, cap: usize) -> Result<Vec<IdealSet>> {
    if ring.size() > cap {
        return Err(Error::BudgetExceeded(format!(
            "left ideal enumeration is capped at size {cap}, ring has {}",
            ring.size()
        )));
    }
    let zero = left_ideal_generated(ring, &[]);
    let mut seen = std::collections::HashSet::from([zero.mask().clone()]);
    let mut all = vec![zero];
    let mut k = 0;
    while k < all.len() {
        let current = all[k].clone();
        for x in ring.elements() {
            if current.contains(x) {
                continue;
            }
            let mut gens = current.members().to_vec();
            gens.push(x);
            let bigger = left_ideal_generated(ring, &gens);
            if seen.insert(bigger.mask().clone()) {
                all.push(bigger);
            }
        }
        k += 1;
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(b.members())));
    Ok(all)
}
