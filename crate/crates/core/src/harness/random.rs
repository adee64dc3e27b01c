//! Seeded generators for random series and annihilating pairs.
//!
//! Rejection sampling almost never produces pairs with `g·[[R]]·f = 0`, so
//! pairs are built constructively: pick `f`, compute
//! `B = l_R(Σ_v Σ_s Rω_s(f(v)))`, then give `g` coefficients `ω_u(b)` with
//! `b ∈ B`. Usually a nonzero `b` is fixed first and the values of `f` are
//! drawn from `{x : b ∈ l_R(Σ_s Rω_s(x))}` so that `B` is nonzero. Every product `g(u)·ω_u(h(w)·ω_w(f(v)))` then equals
//! `ω_u(b·h(w)·ω_w(f(v))) = 0`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ideal::orbit_annihilator;
use crate::monoid::{MonoidElem, MonoidInterval, MonoidKind, OrderedMonoid};
use crate::ring::Elem;
use crate::series::{SeriesRing, SkewSeries};

/// Default support window for random series in each monoid.
pub fn default_window(monoid: &OrderedMonoid) -> MonoidInterval {
    let bound = match monoid.kind() {
        MonoidKind::NatAdd => 4,
        MonoidKind::IntAdd => 2,
        MonoidKind::NatMulDirichlet => 12,
        _ => 2,
    };
    MonoidInterval::up_to(monoid, bound)
}

/// Samples series and annihilating pairs over one series ring.
pub struct PairSampler {
    series: SeriesRing,
    window: Vec<MonoidElem>,
    max_support: usize,
    /// For each nonzero `b` that kills the orbit of some nonzero `x`, the
    /// list of such `x`.
    killed_by: Vec<(Elem, Vec<Elem>)>,
}

impl PairSampler {
    pub fn new(series: &SeriesRing, window: &MonoidInterval, max_support: usize) -> PairSampler {
        let ring = series.ring();
        let anns: Vec<_> = ring
            .elements()
            .map(|a| orbit_annihilator(series.action(), &[a]))
            .collect();
        let killed_by = ring
            .elements()
            .filter(|&b| !ring.is_zero(b))
            .map(|b| {
                let xs: Vec<Elem> = ring
                    .elements()
                    .filter(|&x| !ring.is_zero(x) && anns[x].contains(b))
                    .collect();
                (b, xs)
            })
            .filter(|(_, xs)| !xs.is_empty())
            .collect();
        PairSampler {
            series: series.clone(),
            window: window.elements(series.monoid()),
            max_support: max_support.max(1),
            killed_by,
        }
    }

    fn support<R: Rng>(&self, rng: &mut R) -> Vec<MonoidElem> {
        let k = rng.gen_range(1..=self.max_support.min(self.window.len()));
        self.window.choose_multiple(rng, k).copied().collect()
    }

    /// A series with random support and arbitrary coefficients (possibly zero
    /// after canonicalisation).
    pub fn series<R: Rng>(&self, rng: &mut R) -> SkewSeries {
        let n = self.series.ring().size();
        let terms: Vec<(MonoidElem, Elem)> = self
            .support(rng)
            .into_iter()
            .map(|s| (s, rng.gen_range(0..n)))
            .collect();
        self.series
            .from_terms(terms)
            .expect("window elements belong to the monoid")
    }

    /// A pair `(g, f)` with `g·[[R]]·f = 0`, usually with both sides nonzero.
    pub fn annihilating_pair<R: Rng>(&self, rng: &mut R) -> (SkewSeries, SkewSeries) {
        let ring = self.series.ring();
        let nonzero: Vec<Elem> = ring.elements().filter(|&a| !ring.is_zero(a)).collect();
        if nonzero.is_empty() {
            return (self.series.zero(), self.series.zero());
        }
        let pool = if !self.killed_by.is_empty() && rng.gen_bool(0.75) {
            &self.killed_by.choose(rng).unwrap().1
        } else {
            &nonzero
        };
        let f_terms: Vec<(MonoidElem, Elem)> = self
            .support(rng)
            .into_iter()
            .map(|s| (s, *pool.choose(rng).unwrap()))
            .collect();
        let f = self.series.from_terms(f_terms).unwrap();
        let values: Vec<Elem> = f.terms().iter().map(|&(_, r)| r).collect();
        let ann = orbit_annihilator(self.series.action(), &values);
        let b_pool: Vec<Elem> = ann.members().iter().copied().filter(|&b| !ring.is_zero(b)).collect();
        if b_pool.is_empty() {
            return (self.series.zero(), f);
        }
        let action = self.series.action();
        let g_terms: Vec<(MonoidElem, Elem)> = self
            .support(rng)
            .into_iter()
            .map(|u| (u, action.apply(u, *b_pool.choose(rng).unwrap())))
            .collect();
        (self.series.from_terms(g_terms).unwrap(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FiniteRing, RingAut};
    use crate::series::OmegaAction;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constructed_pairs_annihilate() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let v4 = FiniteRing::product_ring(&f2, &f2).unwrap();
        let v16 = FiniteRing::product_ring(&v4, &v4).unwrap();
        let nat = OrderedMonoid::new(MonoidKind::NatAdd);
        let sr = SeriesRing::new(OmegaAction::single(&v16, nat, RingAut::swap(&v16).unwrap()).unwrap());
        let sampler = PairSampler::new(&sr, &default_window(&nat), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut nontrivial = 0;
        for _ in 0..100 {
            let (g, f) = sampler.annihilating_pair(&mut rng);
            assert!(sr.annihilates(&g, &f).unwrap());
            if !g.is_zero() {
                nontrivial += 1;
            }
        }
        assert!(nontrivial > 50, "only {nontrivial} nontrivial pairs");
    }
}
