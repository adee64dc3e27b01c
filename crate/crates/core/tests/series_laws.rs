use proptest::prelude::*;
use skew_app::harness::gallery::{gallery_ring, resolve_action};
use skew_app::{Elem, FiniteRing, MonoidElem, MonoidKind, OmegaAction, OrderedMonoid, RingAut, SeriesRing, SkewSeries};

/// `α^k` by repeated application, negative powers through the inverse.
fn naive_power(alpha: &RingAut, k: i64) -> RingAut {
    let step = if k < 0 { alpha.inverse() } else { alpha.clone() };
    let mut acc = RingAut::identity(alpha.size());
    for _ in 0..k.unsigned_abs() {
        acc = step.compose(&acc);
    }
    acc
}

fn naive_omega(alpha: &RingAut, beta: &RingAut, s: MonoidElem) -> RingAut {
    match s {
        MonoidElem::Scalar(k) => naive_power(alpha, k),
        MonoidElem::Pair(m, n) => naive_power(alpha, m).compose(&naive_power(beta, n)),
    }
}

/// Convolution straight from the definition: `(fg)(t) = Σ_{u·v=t} f(u) ω_u(g(v))`.
fn naive_convolve(
    ring: &FiniteRing,
    monoid: &OrderedMonoid,
    alpha: &RingAut,
    beta: &RingAut,
    f: &SkewSeries,
    g: &SkewSeries,
) -> Vec<(MonoidElem, Elem)> {
    let mut out: Vec<(MonoidElem, Elem)> = Vec::new();
    for &(u, a) in f.terms() {
        for &(v, b) in g.terms() {
            let t = monoid.op(u, v);
            let term = ring.mul(a, naive_omega(alpha, beta, u).apply(b));
            match out.iter_mut().find(|(s, _)| *s == t) {
                Some(slot) => slot.1 = ring.add(slot.1, term),
                None => out.push((t, term)),
            }
        }
    }
    out.retain(|&(_, r)| !ring.is_zero(r));
    out.sort_by(|x, y| monoid.cmp(&x.0, &y.0));
    out
}

struct Setting {
    series: SeriesRing,
    alpha: RingAut,
    beta: RingAut,
}

fn settings() -> Vec<Setting> {
    let mut out = Vec::new();
    let cases = [
        ("F2xF2", "swap"),
        ("M2F2", "inner:11"),
        ("F4", "frobenius"),
        ("Z6", "identity"),
    ];
    for (ring_name, action) in cases {
        let ring = gallery_ring(ring_name).unwrap();
        let alpha = resolve_action(&ring, action).unwrap();
        let id = RingAut::identity(ring.size());
        for kind in [MonoidKind::NatAdd, MonoidKind::IntAdd] {
            let monoid = OrderedMonoid::new(kind);
            out.push(Setting {
                series: SeriesRing::new(OmegaAction::single(&ring, monoid, alpha.clone()).unwrap()),
                alpha: alpha.clone(),
                beta: id.clone(),
            });
        }
        for kind in [MonoidKind::NatPairLex, MonoidKind::IntPairRevLex] {
            let monoid = OrderedMonoid::new(kind);
            out.push(Setting {
                series: SeriesRing::new(OmegaAction::pair(&ring, monoid, id.clone(), alpha.clone()).unwrap()),
                alpha: id.clone(),
                beta: alpha.clone(),
            });
        }
    }
    let v16 = gallery_ring("F2^4").unwrap();
    let s = resolve_action(&v16, "swap").unwrap();
    let t = resolve_action(&v16, "swap-inner").unwrap();
    out.push(Setting {
        series: SeriesRing::new(
            OmegaAction::pair(&v16, OrderedMonoid::new(MonoidKind::IntPairLex), s.clone(), t.clone()).unwrap(),
        ),
        alpha: s,
        beta: t,
    });
    out
}

type RawTerms = Vec<(i64, i64, usize)>;

fn raw_terms() -> impl Strategy<Value = RawTerms> {
    prop::collection::vec((-3i64..=3, -3i64..=3, 0usize..1024), 0..5)
}

fn build(series: &SeriesRing, raw: &RawTerms) -> SkewSeries {
    let n = series.ring().size();
    let kind = series.monoid().kind();
    let terms = raw.iter().map(|&(a, b, r)| {
        let s = match kind {
            MonoidKind::NatAdd => MonoidElem::Scalar(a.abs()),
            MonoidKind::IntAdd => MonoidElem::Scalar(a),
            MonoidKind::NatPairLex | MonoidKind::NatPairRevLex => MonoidElem::Pair(a.abs(), b.abs()),
            MonoidKind::IntPairLex | MonoidKind::IntPairRevLex => MonoidElem::Pair(a, b),
            MonoidKind::NatMulDirichlet => MonoidElem::Scalar(a.abs() + 1),
        };
        (s, r % n)
    });
    series.from_terms(terms).unwrap()
}

fn elem_strategy() -> impl Strategy<Value = (usize, RawTerms, RawTerms, RawTerms)> {
    (0usize..64, raw_terms(), raw_terms(), raw_terms())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn convolution_matches_definition((k, f, g, _h) in elem_strategy()) {
        let all = settings();
        let st = &all[k % all.len()];
        let (f, g) = (build(&st.series, &f), build(&st.series, &g));
        let fg = st.series.convolve(&f, &g).unwrap();
        let naive = naive_convolve(st.series.ring(), st.series.monoid(), &st.alpha, &st.beta, &f, &g);
        prop_assert_eq!(fg.terms(), &naive[..]);
    }

    #[test]
    fn ring_laws((k, f, g, h) in elem_strategy()) {
        let all = settings();
        let sr = &all[k % all.len()].series;
        let (f, g, h) = (build(sr, &f), build(sr, &g), build(sr, &h));
        prop_assert_eq!(&(&(&f * &g) * &h), &(&f * &(&g * &h)));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&sr.one() * &f), &f);
        prop_assert_eq!(&(&f * &sr.one()), &f);
        prop_assert_eq!(&f + &sr.neg(&f).unwrap(), sr.zero());
    }

    #[test]
    fn embeddings_and_twist(k in 0usize..64, r in 0usize..1024, r2 in 0usize..1024, a in 0i64..4, b in 0i64..4) {
        let all = settings();
        let sr = &all[k % all.len()].series;
        let ring = sr.ring();
        let (r, r2) = (r % ring.size(), r2 % ring.size());
        let (s, t) = match sr.monoid().kind() {
            MonoidKind::NatAdd | MonoidKind::IntAdd => (MonoidElem::Scalar(a), MonoidElem::Scalar(b)),
            _ => (MonoidElem::Pair(a, b), MonoidElem::Pair(b, a)),
        };
        let c = |x| sr.c(x).unwrap();
        let e = |x| sr.e(x).unwrap();
        // c is a ring embedding.
        prop_assert_eq!(&c(r) * &c(r2), c(ring.mul(r, r2)));
        prop_assert_eq!(&c(r) + &c(r2), c(ring.add(r, r2)));
        // e is a monoid embedding.
        prop_assert_eq!(&e(s) * &e(t), e(sr.monoid().op(s, t)));
        // e_s c_r = c_{ω_s(r)} e_s, and c_r e_s = λ_r^s.
        prop_assert_eq!(&e(s) * &c(r), &c(sr.action().apply(s, r)) * &e(s));
        prop_assert_eq!(&c(r) * &e(s), sr.lambda(r, s).unwrap());
    }

    #[test]
    fn least_support_of_product_over_domain_coefficients((k, f, g, _h) in elem_strategy()) {
        // Over a field the least exponent of fg is the sum of the least exponents.
        let ring = gallery_ring("F4").unwrap();
        let alpha = resolve_action(&ring, "frobenius").unwrap();
        let kinds = [MonoidKind::NatAdd, MonoidKind::IntAdd, MonoidKind::NatPairLex, MonoidKind::IntPairRevLex];
        let monoid = OrderedMonoid::new(kinds[k % kinds.len()]);
        let sr = match monoid.kind() {
            MonoidKind::NatAdd | MonoidKind::IntAdd => OmegaAction::single(&ring, monoid, alpha),
            _ => OmegaAction::pair(&ring, monoid, alpha.clone(), alpha),
        }
        .map(SeriesRing::new)
        .unwrap();
        let (f, g) = (build(&sr, &f), build(&sr, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).pi().unwrap(), monoid.op(f.pi().unwrap(), g.pi().unwrap()));
    }

    #[test]
    fn dirichlet_matches_divisor_sum(f in prop::collection::vec(0usize..8, 1..=40), g in prop::collection::vec(0usize..8, 1..=40)) {
        let ring = FiniteRing::cyclic(8).unwrap();
        let sr = SeriesRing::new(OmegaAction::trivial(&ring, OrderedMonoid::new(MonoidKind::NatMulDirichlet)));
        let as_series = |v: &[usize]| sr
            .from_terms(v.iter().enumerate().map(|(i, &r)| (MonoidElem::Scalar(i as i64 + 1), r)))
            .unwrap();
        let fg = &as_series(&f) * &as_series(&g);
        let at = |v: &[usize], n: usize| v.get(n - 1).copied().unwrap_or(0);
        for n in 1..=(f.len() * g.len()) {
            let expected = (1..=n).filter(|d| n % d == 0).map(|d| at(&f, d) * at(&g, n / d)).sum::<usize>() % 8;
            prop_assert_eq!(fg.coeff(MonoidElem::Scalar(n as i64)), expected, "n = {}", n);
        }
    }
}

#[test]
fn settings_cover_nontrivial_actions() {
    let nontrivial = settings().iter().filter(|s| !s.series.action().is_trivial()).count();
    assert!(nontrivial >= 10);
}
