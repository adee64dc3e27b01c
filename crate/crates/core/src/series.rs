//! Finitely supported skew generalized power series.
//!
//! A series is a map `f : S → R` with finite support; multiplication is the
//! twisted convolution
//!
//! ```text
//! (fg)(s) = Σ_{u+v=s} f(u) · ω_u(g(v))
//! ```
//!
//! where `ω : S → Aut(R)` is a monoid homomorphism given by the images of the
//! monoid generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::monoid::{MonoidElem, MonoidKind, OrderedMonoid};
use crate::ring::{Elem, FiniteRing, RingAut};
use crate::{Error, Result};

struct ActionInner {
    ring: FiniteRing,
    monoid: OrderedMonoid,
    generators: Vec<(MonoidElem, RingAut)>,
    /// Powers `α^0 .. α^{ord-1}` of each generator image, in generator order.
    powers: Vec<Vec<RingAut>>,
    /// Distinct values of `ω`, identity first.
    reps: Vec<RingAut>,
    /// For each entry of `reps`, a monoid element mapping to it.
    rep_elements: Vec<MonoidElem>,
    rep_inverses: Vec<RingAut>,
    rep_index: HashMap<RingAut, usize>,
    cache: RwLock<HashMap<MonoidElem, usize>>,
}

/// A monoid homomorphism `ω : S → Aut(R)`.
///
/// Since `Aut(R)` is finite, the image `ω(S)` is a finite set; it is computed
/// once by closing the generator images under composition, and every `ω_s`
/// lookup is memoised.
#[derive(Clone)]
pub struct OmegaAction(Arc<ActionInner>);

impl fmt::Debug for OmegaAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OmegaAction")
            .field("ring", &self.0.ring)
            .field("monoid", &self.0.monoid)
            .field("generators", &self.0.generators)
            .finish()
    }
}

impl OmegaAction {
    /// Builds `ω` from generator images. Generators not listed map to the
    /// identity. For pair monoids the two images must commute. On `(ℕ≥1, ·)`
    /// only the trivial action is supported.
    pub fn new(ring: &FiniteRing, monoid: OrderedMonoid, images: Vec<(MonoidElem, RingAut)>) -> Result<OmegaAction> {
        let gens = monoid.generators();
        for (s, a) in &images {
            if a.size() != ring.size() {
                return Err(Error::InvalidAction(format!(
                    "image of {s} acts on {} elements, ring has {}",
                    a.size(),
                    ring.size()
                )));
            }
            if monoid.kind() == MonoidKind::NatMulDirichlet {
                if !a.is_identity() {
                    return Err(Error::InvalidAction(
                        "only the trivial action is supported on (N>=1, *)".into(),
                    ));
                }
            } else if !gens.contains(s) {
                return Err(Error::InvalidAction(format!("{s} is not a generator of {monoid}")));
            }
        }
        let generators: Vec<(MonoidElem, RingAut)> = gens
            .iter()
            .map(|g| {
                let image = images
                    .iter()
                    .find(|(s, _)| s == g)
                    .map(|(_, a)| a.clone())
                    .unwrap_or_else(|| RingAut::identity(ring.size()));
                (*g, image)
            })
            .collect();
        for (i, (s, a)) in generators.iter().enumerate() {
            for (t, b) in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::InvalidAction(format!("images of {s} and {t} do not commute")));
                }
            }
        }
        let powers = generators
            .iter()
            .map(|(_, a)| {
                let mut pw = vec![RingAut::identity(ring.size())];
                loop {
                    let next = a.compose(pw.last().unwrap());
                    if next.is_identity() {
                        break pw;
                    }
                    pw.push(next);
                }
            })
            .collect();

        let mut reps = vec![RingAut::identity(ring.size())];
        let mut rep_elements = vec![monoid.zero()];
        let mut rep_index = HashMap::from([(reps[0].clone(), 0)]);
        let mut k = 0;
        while k < reps.len() {
            for (g, a) in &generators {
                let next = a.compose(&reps[k]);
                if !rep_index.contains_key(&next) {
                    rep_index.insert(next.clone(), reps.len());
                    rep_elements.push(monoid.op(*g, rep_elements[k]));
                    reps.push(next);
                }
            }
            k += 1;
        }
        let rep_inverses = reps.iter().map(RingAut::inverse).collect();
        Ok(OmegaAction(Arc::new(ActionInner {
            ring: ring.clone(),
            monoid,
            generators,
            powers,
            reps,
            rep_elements,
            rep_inverses,
            rep_index,
            cache: RwLock::new(HashMap::new()),
        })))
    }

    pub fn trivial(ring: &FiniteRing, monoid: OrderedMonoid) -> OmegaAction {
        OmegaAction::new(ring, monoid, Vec::new()).expect("trivial action is always valid")
    }

    /// `ω_1 = alpha` on `ℕ` or `ℤ`.
    pub fn single(ring: &FiniteRing, monoid: OrderedMonoid, alpha: RingAut) -> Result<OmegaAction> {
        let g = monoid
            .generators()
            .first()
            .copied()
            .ok_or_else(|| Error::InvalidAction(format!("{monoid} has no listed generator")))?;
        OmegaAction::new(ring, monoid, vec![(g, alpha)])
    }

    /// `ω_{(m,n)} = α^m β^n` on a pair monoid.
    pub fn pair(ring: &FiniteRing, monoid: OrderedMonoid, alpha: RingAut, beta: RingAut) -> Result<OmegaAction> {
        if monoid.generators().len() != 2 {
            return Err(Error::InvalidAction(format!("{monoid} is not a pair monoid")));
        }
        OmegaAction::new(
            ring,
            monoid,
            vec![(MonoidElem::Pair(1, 0), alpha), (MonoidElem::Pair(0, 1), beta)],
        )
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.0.ring
    }

    pub fn monoid(&self) -> &OrderedMonoid {
        &self.0.monoid
    }

    pub fn generator_images(&self) -> &[(MonoidElem, RingAut)] {
        &self.0.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.0.reps.len() == 1
    }

    /// The distinct automorphisms `ω_s`, identity first.
    pub fn representatives(&self) -> &[RingAut] {
        &self.0.reps
    }

    /// Monoid elements realising [`Self::representatives`], index for index.
    pub fn representative_elements(&self) -> &[MonoidElem] {
        &self.0.rep_elements
    }

    /// Index of `ω_s` in [`Self::representatives`]; memoised.
    pub fn eval_index(&self, s: MonoidElem) -> usize {
        if let Some(&i) = self.0.cache.read().expect("cache lock").get(&s) {
            return i;
        }
        debug_assert!(self.0.monoid.contains(s), "{s} not in {}", self.0.monoid);
        let aut = match s {
            MonoidElem::Scalar(_) if self.0.generators.is_empty() => RingAut::identity(self.0.ring.size()),
            MonoidElem::Scalar(k) => power(&self.0.powers[0], k),
            MonoidElem::Pair(m, n) => power(&self.0.powers[0], m).compose(&power(&self.0.powers[1], n)),
        };
        let i = *self
            .0
            .rep_index
            .get(&aut)
            .expect("omega_s lies in the closure of the generator images");
        self.0.cache.write().expect("cache lock").insert(s, i);
        i
    }

    /// `ω_s`.
    pub fn eval(&self, s: MonoidElem) -> RingAut {
        self.0.reps[self.eval_index(s)].clone()
    }

    /// `ω_s⁻¹`.
    pub fn eval_inverse(&self, s: MonoidElem) -> RingAut {
        self.0.rep_inverses[self.eval_index(s)].clone()
    }

    /// `ω_s(r)` without cloning the automorphism.
    pub fn apply(&self, s: MonoidElem, r: Elem) -> Elem {
        self.0.reps[self.eval_index(s)].apply(r)
    }

    pub fn apply_inverse(&self, s: MonoidElem, r: Elem) -> Elem {
        self.0.rep_inverses[self.eval_index(s)].apply(r)
    }
}

fn power(powers: &[RingAut], k: i64) -> RingAut {
    powers[k.rem_euclid(powers.len() as i64) as usize].clone()
}

struct SeriesInner {
    action: OmegaAction,
}

/// The ring `[[R^{S,≤}, ω]]`, restricted to finitely supported series.
#[derive(Clone)]
pub struct SeriesRing(Arc<SeriesInner>);

impl fmt::Debug for SeriesRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SeriesRing({}, {}, {} omega values)",
            self.ring().name(),
            self.monoid(),
            self.action().representatives().len()
        )
    }
}

impl SeriesRing {
    pub fn new(action: OmegaAction) -> SeriesRing {
        SeriesRing(Arc::new(SeriesInner { action }))
    }

    pub fn ring(&self) -> &FiniteRing {
        self.0.action.ring()
    }

    pub fn monoid(&self) -> &OrderedMonoid {
        self.0.action.monoid()
    }

    pub fn action(&self) -> &OmegaAction {
        &self.0.action
    }

    pub fn same_as(&self, other: &SeriesRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn zero(&self) -> SkewSeries {
        SkewSeries {
            terms: Vec::new(),
            parent: self.clone(),
        }
    }

    pub fn one(&self) -> SkewSeries {
        self.c(self.ring().one()).expect("one is a ring element")
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<I>(&self, terms: I) -> Result<SkewSeries>
    where
        I: IntoIterator<Item = (MonoidElem, Elem)>,
    {
        let ring = self.ring();
        let mut acc: HashMap<MonoidElem, Elem> = HashMap::new();
        for (s, r) in terms {
            self.monoid().check(s)?;
            ring.check_elem(r)?;
            let slot = acc.entry(s).or_insert(ring.zero());
            *slot = ring.add(*slot, r);
        }
        Ok(self.canonical(acc))
    }

    fn canonical(&self, acc: HashMap<MonoidElem, Elem>) -> SkewSeries {
        let ring = self.ring();
        let monoid = *self.monoid();
        let mut terms: Vec<(MonoidElem, Elem)> = acc.into_iter().filter(|&(_, r)| !ring.is_zero(r)).collect();
        terms.sort_by(|a, b| monoid.cmp(&a.0, &b.0));
        SkewSeries {
            terms,
            parent: self.clone(),
        }
    }

    /// `λ_r^s`: coefficient `r` at `s`, zero elsewhere.
    pub fn lambda(&self, r: Elem, s: MonoidElem) -> Result<SkewSeries> {
        self.from_terms([(s, r)])
    }

    /// `c_r = λ_r^0`.
    pub fn c(&self, r: Elem) -> Result<SkewSeries> {
        self.lambda(r, self.monoid().zero())
    }

    /// `e_s = λ_1^s`.
    pub fn e(&self, s: MonoidElem) -> Result<SkewSeries> {
        self.lambda(self.ring().one(), s)
    }

    fn check_parent(&self, f: &SkewSeries) -> Result<()> {
        if self.same_as(&f.parent) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Twisted convolution `fg`.
    pub fn convolve(&self, f: &SkewSeries, g: &SkewSeries) -> Result<SkewSeries> {
        self.check_parent(f)?;
        self.check_parent(g)?;
        let ring = self.ring();
        let monoid = self.monoid();
        let action = self.action();
        let mut acc: HashMap<MonoidElem, Elem> = HashMap::with_capacity(f.len() * g.len());
        for &(u, a) in &f.terms {
            let omega_u = &action.representatives()[action.eval_index(u)];
            for &(v, b) in &g.terms {
                let term = ring.mul(a, omega_u.apply(b));
                let slot = acc.entry(monoid.op(u, v)).or_insert(ring.zero());
                *slot = ring.add(*slot, term);
            }
        }
        Ok(self.canonical(acc))
    }

    pub fn add(&self, f: &SkewSeries, g: &SkewSeries) -> Result<SkewSeries> {
        self.check_parent(f)?;
        self.check_parent(g)?;
        self.from_terms(f.terms.iter().chain(&g.terms).copied())
    }

    pub fn neg(&self, f: &SkewSeries) -> Result<SkewSeries> {
        self.check_parent(f)?;
        let ring = self.ring();
        self.from_terms(f.terms.iter().map(|&(s, r)| (s, ring.neg(r))))
    }

    /// Whether `g · λ_r^s · f = 0` for every `r ∈ R` and every `s` in
    /// `middles`.
    ///
    /// With `middles` covering every value of `ω`, this is equivalent to
    /// `g · [[R^{S,≤},ω]] · f = 0`: the coefficient of `g h f` at `t` splits
    /// as a sum over `w ∈ supp(h)` of coefficients of `g λ_{h(w)}^w f`, and in
    /// a cancellative commutative monoid `g λ_r^w f` vanishes or not
    /// depending on `w` only through `ω_w`.
    pub fn annihilates_via_all_middles(&self, g: &SkewSeries, f: &SkewSeries, middles: &[MonoidElem]) -> Result<bool> {
        self.check_parent(g)?;
        self.check_parent(f)?;
        if g.is_zero() || f.is_zero() {
            return Ok(true);
        }
        for r in self.ring().elements() {
            if self.ring().is_zero(r) {
                continue;
            }
            for &s in middles {
                let gl = self.convolve(g, &self.lambda(r, s)?)?;
                if !self.convolve(&gl, f)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// [`Self::annihilates_via_all_middles`] over the representatives of `ω(S)`.
    pub fn annihilates(&self, g: &SkewSeries, f: &SkewSeries) -> Result<bool> {
        let middles = self.action().representative_elements().to_vec();
        self.annihilates_via_all_middles(g, f, &middles)
    }
}

/// A finitely supported series, stored as its nonzero terms sorted by the
/// monoid order.
#[derive(Clone)]
pub struct SkewSeries {
    terms: Vec<(MonoidElem, Elem)>,
    parent: SeriesRing,
}

impl fmt::Debug for SkewSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, r)| format!("{r}@{s}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl PartialEq for SkewSeries {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.terms == other.terms
    }
}

impl Eq for SkewSeries {}

impl SkewSeries {
    pub fn parent(&self) -> &SeriesRing {
        &self.parent
    }

    pub fn terms(&self) -> &[(MonoidElem, Elem)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = MonoidElem> + '_ {
        self.terms.iter().map(|(s, _)| *s)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `f(s)`.
    pub fn coeff(&self, s: MonoidElem) -> Elem {
        let monoid = self.parent.monoid();
        self.terms
            .binary_search_by(|(t, _)| monoid.cmp(t, &s))
            .map(|i| self.terms[i].1)
            .unwrap_or(self.parent.ring().zero())
    }

    /// `π(f)`, the least element of the support.
    pub fn pi(&self) -> Result<MonoidElem> {
        self.terms.first().map(|(s, _)| *s).ok_or(Error::ZeroSeries)
    }
}

impl std::ops::Mul for &SkewSeries {
    type Output = SkewSeries;

    /// Panics if the operands live in different series rings; use
    /// [`SeriesRing::convolve`] for a fallible product.
    fn mul(self, rhs: &SkewSeries) -> SkewSeries {
        self.parent.convolve(self, rhs).expect("series from the same ring")
    }
}

impl std::ops::Add for &SkewSeries {
    type Output = SkewSeries;

    fn add(self, rhs: &SkewSeries) -> SkewSeries {
        self.parent.add(self, rhs).expect("series from the same ring")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidInterval;

    fn sc(x: i64) -> MonoidElem {
        MonoidElem::Scalar(x)
    }

    fn v4() -> FiniteRing {
        let f2 = FiniteRing::cyclic(2).unwrap();
        FiniteRing::product_ring(&f2, &f2).unwrap()
    }

    #[test]
    fn omega_examples() {
        let r = v4();
        let nat = OrderedMonoid::new(MonoidKind::NatAdd);
        let swap = RingAut::swap(&r).unwrap();
        let w = OmegaAction::single(&r, nat, swap.clone()).unwrap();
        assert!(w.eval(sc(0)).is_identity());
        assert!(w.eval(sc(2)).is_identity());
        assert_eq!(w.eval(sc(3)), swap);
        assert_eq!(w.representatives().len(), 2);
        assert_eq!(w.representative_elements(), &[sc(0), sc(1)]);

        // ω_{(2,1)} = α∘α∘β on a pair monoid.
        let f2 = FiniteRing::cyclic(2).unwrap();
        let r16 = FiniteRing::product_ring(&r, &r).unwrap();
        let alpha = RingAut::swap(&r16).unwrap();
        let inner_swap = {
            let m = r.size();
            let perm = r16
                .elements()
                .map(|x| swap.apply(x / m) * m + swap.apply(x % m))
                .collect();
            RingAut::new(&r16, perm).unwrap()
        };
        let lex = OrderedMonoid::new(MonoidKind::NatPairLex);
        let w = OmegaAction::pair(&r16, lex, alpha.clone(), inner_swap.clone()).unwrap();
        assert_eq!(
            w.eval(MonoidElem::Pair(2, 1)),
            alpha.compose(&alpha).compose(&inner_swap)
        );
        drop(f2);
    }

    #[test]
    fn pair_action_requires_commuting_images() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let m2 = FiniteRing::matrix(&f2, 2).unwrap();
        let auts = crate::ring::automorphisms(&m2, &crate::Limits::default()).unwrap();
        let lex = OrderedMonoid::new(MonoidKind::NatPairLex);
        let non_commuting = auts
            .iter()
            .flat_map(|a| auts.iter().map(move |b| (a, b)))
            .find(|(a, b)| !a.commutes_with(b))
            .unwrap();
        let err = OmegaAction::pair(&m2, lex, non_commuting.0.clone(), non_commuting.1.clone()).unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
    }

    #[test]
    fn dirichlet_rejects_nontrivial_action() {
        let r = v4();
        let dir = OrderedMonoid::new(MonoidKind::NatMulDirichlet);
        let swap = RingAut::swap(&r).unwrap();
        assert!(OmegaAction::new(&r, dir, vec![(sc(2), swap)]).is_err());
    }

    #[test]
    fn convolution_examples() {
        // (2 + 2x)(2x) = 0 over Z4.
        let z4 = FiniteRing::cyclic(4).unwrap();
        let nat = OrderedMonoid::new(MonoidKind::NatAdd);
        let sr = SeriesRing::new(OmegaAction::trivial(&z4, nat));
        let f = sr.from_terms([(sc(0), 2), (sc(1), 2)]).unwrap();
        let g = sr.lambda(2, sc(1)).unwrap();
        assert!((&f * &g).is_zero());

        // λ_{(1,0)}^1 · λ_{(0,1)}^1 = λ_{(1,0)}^2 with ω_1 = swap.
        let r = v4();
        let sr = SeriesRing::new(OmegaAction::single(&r, nat, RingAut::swap(&r).unwrap()).unwrap());
        let (e10, e01) = (2, 1);
        let prod = &sr.lambda(e10, sc(1)).unwrap() * &sr.lambda(e01, sc(1)).unwrap();
        assert_eq!(prod, sr.lambda(e10, sc(2)).unwrap());

        // ζ·ζ counts divisors in the Dirichlet ring.
        let z8 = FiniteRing::cyclic(8).unwrap();
        let dir = OrderedMonoid::new(MonoidKind::NatMulDirichlet);
        let sr = SeriesRing::new(OmegaAction::trivial(&z8, dir));
        let window = MonoidInterval::up_to(&dir, 12);
        let zeta = sr
            .from_terms(window.elements(&dir).into_iter().map(|s| (s, 1)))
            .unwrap();
        let zz = &zeta * &zeta;
        assert_eq!(zz.coeff(sc(6)), 4);
        assert_eq!(zz.coeff(sc(12)), 6);
    }

    #[test]
    fn lambda_c_e() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let nat = OrderedMonoid::new(MonoidKind::NatAdd);
        let sr = SeriesRing::new(OmegaAction::trivial(&z4, nat));
        assert!(sr.lambda(0, sc(3)).unwrap().is_zero());
        let one = sr.c(1).unwrap();
        let f = sr.from_terms([(sc(2), 3), (sc(5), 1)]).unwrap();
        assert_eq!(&one * &f, f);
        assert_eq!(&f * &one, f);
        assert_eq!(f.pi().unwrap(), sc(2));
        assert_eq!(sr.c(3).unwrap().pi().unwrap(), sc(0));
        assert_eq!(sr.zero().pi().unwrap_err(), Error::ZeroSeries);
        assert!(sr.lambda(1, sc(-1)).is_err());
    }

    #[test]
    fn pi_in_lex_order() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let lex = OrderedMonoid::new(MonoidKind::NatPairLex);
        let sr = SeriesRing::new(OmegaAction::trivial(&z4, lex));
        let f = sr
            .from_terms([(MonoidElem::Pair(1, 0), 1), (MonoidElem::Pair(0, 3), 1)])
            .unwrap();
        assert_eq!(f.pi().unwrap(), MonoidElem::Pair(0, 3));
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let nat = OrderedMonoid::new(MonoidKind::NatAdd);
        let a = SeriesRing::new(OmegaAction::trivial(&z4, nat));
        let b = SeriesRing::new(OmegaAction::trivial(&z4, nat));
        let f = a.c(1).unwrap();
        let g = b.c(1).unwrap();
        assert_eq!(a.convolve(&f, &g).unwrap_err(), Error::ContextMismatch);
    }

    #[test]
    fn middle_annihilation_examples() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let nat = OrderedMonoid::new(MonoidKind::NatAdd);
        let sr = SeriesRing::new(OmegaAction::trivial(&z4, nat));
        let c2 = sr.c(2).unwrap();
        let c1 = sr.c(1).unwrap();
        assert!(sr.annihilates(&sr.zero(), &c1).unwrap());
        assert!(sr.annihilates(&c1, &sr.zero()).unwrap());
        assert!(sr.annihilates(&c2, &c2).unwrap());
        assert!(!sr.annihilates(&c2, &c1).unwrap());
    }

    #[test]
    fn eval_cache_is_shared_across_threads() {
        let r = v4();
        let int = OrderedMonoid::new(MonoidKind::IntAdd);
        let w = OmegaAction::single(&r, int, RingAut::swap(&r).unwrap()).unwrap();
        std::thread::scope(|scope| {
            for t in 0..4 {
                let w = w.clone();
                scope.spawn(move || {
                    for k in -50..50 {
                        assert_eq!(w.eval(sc(k + t)).is_identity(), (k + t) % 2 == 0);
                    }
                });
            }
        });
        assert!(w.eval_inverse(sc(-3)).compose(&w.eval(sc(-3))).is_identity());
    }
}
