//! Finite unital rings addressed by element index, and their automorphisms.
//!
//! Elements of a ring of size `n` are the indices `0..n`. Small rings carry
//! materialised addition and multiplication tables; larger structured rings
//! (matrices, triangular matrices, products) compute on demand from their
//! components.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Limits, Result};

/// Index of a ring element.
pub type Elem = usize;

/// How a ring's arithmetic is computed when it has no tables.
#[derive(Clone, Debug)]
pub enum Structure {
    /// `ℤ/n`.
    Cyclic(usize),
    /// `k × k` matrices over `base`, entries stored row-major as base-`|base|` digits.
    Matrix { base: FiniteRing, k: usize },
    /// Upper triangular `k × k` matrices over `base`; only entries `(i, j)` with `i ≤ j` are stored.
    UpperTriangular { base: FiniteRing, k: usize },
    /// `left × right`, element `(x, y)` encoded as `x * |right| + y`.
    Product(FiniteRing, FiniteRing),
    /// Arbitrary validated tables.
    Table,
}

struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
}

struct RingInner {
    name: String,
    size: usize,
    zero: Elem,
    one: Elem,
    structure: Structure,
    tables: Option<Tables>,
}

/// A finite ring with unity. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingInner>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, size {})", self.0.name, self.0.size)
    }
}

impl FiniteRing {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        self.0.zero
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn structure(&self) -> &Structure {
        &self.0.structure
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.size
    }

    /// Whether both handles point at the same ring object.
    pub fn same_as(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.0.size
    }

    pub fn check_elem(&self, x: Elem) -> Result<Elem> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange {
                element: x,
                size: self.size(),
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.add[a * self.0.size + b],
            None => self.structured_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.mul[a * self.0.size + b],
            None => self.structured_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.neg[a],
            None => self.structured_neg(a),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn is_zero(&self, a: Elem) -> bool {
        a == self.0.zero
    }

    /// Product of a sequence, left to right.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Human-readable rendering of an element, e.g. `(1,0)` or `[[1,1],[0,1]]`.
    pub fn label(&self, x: Elem) -> String {
        match &self.0.structure {
            Structure::Cyclic(_) | Structure::Table => x.to_string(),
            Structure::Product(a, b) => {
                format!("({},{})", a.label(x / b.size()), b.label(x % b.size()))
            }
            Structure::Matrix { base, k } => {
                let m = decode(x, base.size(), k * k);
                render_matrix(base, *k, |i, j| m[i * k + j])
            }
            Structure::UpperTriangular { base, k } => {
                let m = triangular_to_full(base, *k, x);
                render_matrix(base, *k, |i, j| m[i * k + j])
            }
        }
    }

    // -- factories ---------------------------------------------------------

    /// `ℤ/n` with standard arithmetic.
    pub fn cyclic(n: usize) -> Result<FiniteRing> {
        Self::cyclic_with(n, &Limits::default())
    }

    pub fn cyclic_with(n: usize, limits: &Limits) -> Result<FiniteRing> {
        if n == 0 {
            return Err(Error::EmptyRing);
        }
        build(format!("Z{n}"), n, 0, 1 % n, Structure::Cyclic(n), limits)
    }

    /// `k × k` matrices over `base`.
    pub fn matrix(base: &FiniteRing, k: usize) -> Result<FiniteRing> {
        Self::matrix_with(base, k, &Limits::default())
    }

    pub fn matrix_with(base: &FiniteRing, k: usize, limits: &Limits) -> Result<FiniteRing> {
        if k == 0 {
            return Err(Error::EmptyRing);
        }
        let size = checked_pow(base.size(), k * k, limits.ring_size_cap)?;
        let mut one = vec![base.zero(); k * k];
        for i in 0..k {
            one[i * k + i] = base.one();
        }
        let one = encode(&one, base.size());
        let zero = encode(&vec![base.zero(); k * k], base.size());
        let ring = build(
            format!("M{k}({})", base.name()),
            size,
            zero,
            one,
            Structure::Matrix { base: base.clone(), k },
            limits,
        )?;
        ring.validate(limits)?;
        Ok(ring)
    }

    /// Upper triangular `k × k` matrices over `base`.
    pub fn upper_triangular(base: &FiniteRing, k: usize) -> Result<FiniteRing> {
        Self::upper_triangular_with(base, k, &Limits::default())
    }

    pub fn upper_triangular_with(base: &FiniteRing, k: usize, limits: &Limits) -> Result<FiniteRing> {
        if k == 0 {
            return Err(Error::EmptyRing);
        }
        let slots = k * (k + 1) / 2;
        let size = checked_pow(base.size(), slots, limits.ring_size_cap)?;
        let mut full = vec![base.zero(); k * k];
        for i in 0..k {
            full[i * k + i] = base.one();
        }
        let one = full_to_triangular(base, k, &full);
        let zero = encode(&vec![base.zero(); slots], base.size());
        let ring = build(
            format!("T{k}({})", base.name()),
            size,
            zero,
            one,
            Structure::UpperTriangular { base: base.clone(), k },
            limits,
        )?;
        ring.validate(limits)?;
        Ok(ring)
    }

    /// Direct product `a × b`.
    pub fn product_ring(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing> {
        Self::product_ring_with(a, b, &Limits::default())
    }

    pub fn product_ring_with(a: &FiniteRing, b: &FiniteRing, limits: &Limits) -> Result<FiniteRing> {
        let size = a
            .size()
            .checked_mul(b.size())
            .filter(|&s| s <= limits.ring_size_cap)
            .ok_or(Error::SizeCapExceeded {
                size: a.size().saturating_mul(b.size()),
                cap: limits.ring_size_cap,
            })?;
        let ring = build(
            format!("{}x{}", a.name(), b.name()),
            size,
            a.zero() * b.size() + b.zero(),
            a.one() * b.size() + b.one(),
            Structure::Product(a.clone(), b.clone()),
            limits,
        )?;
        ring.validate(limits)?;
        Ok(ring)
    }

    /// A ring given by explicit addition and multiplication tables. Zero and
    /// one are located by scanning; every axiom is checked exhaustively.
    pub fn from_tables(name: &str, add: Vec<Vec<Elem>>, mul: Vec<Vec<Elem>>) -> Result<FiniteRing> {
        Self::from_tables_with(name, add, mul, &Limits::default())
    }

    pub fn from_tables_with(
        name: &str,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        limits: &Limits,
    ) -> Result<FiniteRing> {
        let n = add.len();
        if n == 0 {
            return Err(Error::EmptyRing);
        }
        if n > limits.ring_size_cap {
            return Err(Error::SizeCapExceeded {
                size: n,
                cap: limits.ring_size_cap,
            });
        }
        if mul.len() != n {
            return Err(Error::MalformedTable(format!(
                "addition table has {n} rows, multiplication table has {}",
                mul.len()
            )));
        }
        for (label, table) in [("addition", &add), ("multiplication", &mul)] {
            for (i, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::MalformedTable(format!(
                        "{label} row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                    return Err(Error::MalformedTable(format!(
                        "{label} row {i} contains out-of-range entry {bad}"
                    )));
                }
            }
        }
        let add: Vec<Elem> = add.into_iter().flatten().collect();
        let mul: Vec<Elem> = mul.into_iter().flatten().collect();
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[z * n + a] == a && add[a * n + z] == a))
            .ok_or(Error::AxiomViolation {
                axiom: "additive identity exists",
                triple: (0, 0, 0),
            })?;
        let one = (0..n)
            .find(|&o| (0..n).all(|a| mul[o * n + a] == a && mul[a * n + o] == a))
            .ok_or(Error::AxiomViolation {
                axiom: "multiplicative identity exists",
                triple: (0, 0, 0),
            })?;
        let mut neg = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == zero).ok_or(Error::AxiomViolation {
                axiom: "additive inverse",
                triple: (a, 0, 0),
            })?;
        }
        let ring = FiniteRing(Arc::new(RingInner {
            name: name.to_string(),
            size: n,
            zero,
            one,
            structure: Structure::Table,
            tables: Some(Tables { add, mul, neg }),
        }));
        ring.validate_exhaustive()?;
        Ok(ring)
    }

    // -- validation --------------------------------------------------------

    /// Checks the ring axioms: exhaustively up to
    /// `limits.exhaustive_validation_cap`, on 20 000 seeded random triples
    /// above it. Reports the first failing triple.
    pub fn validate(&self, limits: &Limits) -> Result<()> {
        if self.size() <= limits.exhaustive_validation_cap {
            self.validate_exhaustive()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0fa1);
            let n = self.size();
            for a in 0..n.min(4096) {
                self.check_unary(a)?;
            }
            for _ in 0..20_000 {
                let t = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                self.check_triple(t.0, t.1, t.2)?;
            }
            Ok(())
        }
    }

    fn validate_exhaustive(&self) -> Result<()> {
        let n = self.size();
        for a in 0..n {
            self.check_unary(a)?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    self.check_triple(a, b, c)?;
                }
            }
        }
        Ok(())
    }

    fn check_unary(&self, a: Elem) -> Result<()> {
        let fail = |axiom| {
            Err(Error::AxiomViolation {
                axiom,
                triple: (a, 0, 0),
            })
        };
        if self.add(a, self.zero()) != a || self.add(self.zero(), a) != a {
            return fail("additive identity");
        }
        if self.add(a, self.neg(a)) != self.zero() {
            return fail("additive inverse");
        }
        if self.mul(a, self.one()) != a || self.mul(self.one(), a) != a {
            return fail("multiplicative identity");
        }
        Ok(())
    }

    fn check_triple(&self, a: Elem, b: Elem, c: Elem) -> Result<()> {
        let fail = |axiom| {
            Err(Error::AxiomViolation {
                axiom,
                triple: (a, b, c),
            })
        };
        if self.add(a, b) != self.add(b, a) {
            return fail("additive commutativity");
        }
        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
            return fail("additive associativity");
        }
        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
            return fail("multiplicative associativity");
        }
        if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
            return fail("left distributivity");
        }
        if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
            return fail("right distributivity");
        }
        Ok(())
    }

    // -- structure queries -------------------------------------------------

    /// All `x` with `x·x = x`, ascending.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// All two-sided units, ascending.
    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&u| self.inverse_of(u).is_some()).collect()
    }

    pub fn inverse_of(&self, u: Elem) -> Option<Elem> {
        self.elements()
            .find(|&v| self.mul(u, v) == self.one() && self.mul(v, u) == self.one())
    }

    /// Smallest `k ≥ 1` with `k·x = 0`.
    pub fn additive_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero() {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    // -- structured arithmetic --------------------------------------------

    fn structured_add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.structure {
            Structure::Cyclic(n) => (a + b) % n,
            Structure::Product(l, r) => {
                let m = r.size();
                l.add(a / m, b / m) * m + r.add(a % m, b % m)
            }
            Structure::Matrix { base, k } => digitwise(base, a, b, k * k, |x, y| base.add(x, y)),
            Structure::UpperTriangular { base, k } => digitwise(base, a, b, k * (k + 1) / 2, |x, y| base.add(x, y)),
            Structure::Table => unreachable!("table rings always carry tables"),
        }
    }

    fn structured_neg(&self, a: Elem) -> Elem {
        match &self.0.structure {
            Structure::Cyclic(n) => (n - a) % n,
            Structure::Product(l, r) => {
                let m = r.size();
                l.neg(a / m) * m + r.neg(a % m)
            }
            Structure::Matrix { base, k } => digitwise(base, a, 0, k * k, |x, _| base.neg(x)),
            Structure::UpperTriangular { base, k } => digitwise(base, a, 0, k * (k + 1) / 2, |x, _| base.neg(x)),
            Structure::Table => unreachable!("table rings always carry tables"),
        }
    }

    fn structured_mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.structure {
            Structure::Cyclic(n) => (a * b) % n,
            Structure::Product(l, r) => {
                let m = r.size();
                l.mul(a / m, b / m) * m + r.mul(a % m, b % m)
            }
            Structure::Matrix { base, k } => {
                let q = base.size();
                let x = decode(a, q, k * k);
                let y = decode(b, q, k * k);
                encode(&matmul(base, *k, &x, &y), q)
            }
            Structure::UpperTriangular { base, k } => {
                let x = triangular_to_full(base, *k, a);
                let y = triangular_to_full(base, *k, b);
                full_to_triangular(base, *k, &matmul(base, *k, &x, &y))
            }
            Structure::Table => unreachable!("table rings always carry tables"),
        }
    }
}

fn build(
    name: String,
    size: usize,
    zero: Elem,
    one: Elem,
    structure: Structure,
    limits: &Limits,
) -> Result<FiniteRing> {
    if size > limits.ring_size_cap {
        return Err(Error::SizeCapExceeded {
            size,
            cap: limits.ring_size_cap,
        });
    }
    let mut ring = RingInner {
        name,
        size,
        zero,
        one,
        structure,
        tables: None,
    };
    if size <= limits.table_threshold {
        let lazy = FiniteRing(Arc::new(ring));
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                add.push(lazy.structured_add(a, b));
                mul.push(lazy.structured_mul(a, b));
            }
        }
        let neg = (0..size).map(|a| lazy.structured_neg(a)).collect();
        ring = Arc::try_unwrap(lazy.0).unwrap_or_else(|_| unreachable!("sole owner"));
        ring.tables = Some(Tables { add, mul, neg });
    }
    Ok(FiniteRing(Arc::new(ring)))
}

fn checked_pow(base: usize, exp: usize, cap: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&s| s <= cap)
            .ok_or(Error::SizeCapExceeded { size: usize::MAX, cap })?;
    }
    Ok(acc)
}

fn decode(mut x: usize, q: usize, len: usize) -> Vec<Elem> {
    let mut digits = Vec::with_capacity(len);
    for _ in 0..len {
        digits.push(x % q);
        x /= q;
    }
    digits
}

fn encode(digits: &[Elem], q: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * q + d)
}

fn digitwise(base: &FiniteRing, a: Elem, b: Elem, len: usize, op: impl Fn(Elem, Elem) -> Elem) -> Elem {
    let q = base.size();
    let x = decode(a, q, len);
    let y = decode(b, q, len);
    let z: Vec<Elem> = x.iter().zip(&y).map(|(&p, &r)| op(p, r)).collect();
    encode(&z, q)
}

fn matmul(base: &FiniteRing, k: usize, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    let mut out = vec![base.zero(); k * k];
    for i in 0..k {
        for j in 0..k {
            out[i * k + j] = base.sum((0..k).map(|l| base.mul(x[i * k + l], y[l * k + j])));
        }
    }
    out
}

fn triangular_to_full(base: &FiniteRing, k: usize, x: Elem) -> Vec<Elem> {
    let digits = decode(x, base.size(), k * (k + 1) / 2);
    let mut full = vec![base.zero(); k * k];
    let mut slot = 0;
    for i in 0..k {
        for j in i..k {
            full[i * k + j] = digits[slot];
            slot += 1;
        }
    }
    full
}

fn full_to_triangular(base: &FiniteRing, k: usize, full: &[Elem]) -> Elem {
    let digits: Vec<Elem> = (0..k)
        .flat_map(|i| (i..k).map(move |j| (i, j)))
        .map(|(i, j)| full[i * k + j])
        .collect();
    encode(&digits, base.size())
}

fn render_matrix(base: &FiniteRing, k: usize, entry: impl Fn(usize, usize) -> Elem) -> String {
    let rows: Vec<String> = (0..k)
        .map(|i| {
            let cols: Vec<String> = (0..k).map(|j| base.label(entry(i, j))).collect();
            format!("[{}]", cols.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

// -- automorphisms -------------------------------------------------------

/// A ring automorphism, stored as the image of every element index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RingAut {
    perm: Arc<[Elem]>,
}

impl fmt::Debug for RingAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingAut{:?}", &self.perm[..])
    }
}

impl RingAut {
    pub fn identity(size: usize) -> RingAut {
        RingAut {
            perm: (0..size).collect(),
        }
    }

    /// Validates `perm` as an automorphism of `ring`.
    pub fn new(ring: &FiniteRing, perm: Vec<Elem>) -> Result<RingAut> {
        let n = ring.size();
        if perm.len() != n {
            return Err(Error::NotAnAutomorphism(format!(
                "image list has {} entries, ring has {n} elements",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &y in &perm {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotAnAutomorphism(format!("not a bijection at image {y}")));
            }
        }
        if perm[ring.one()] != ring.one() {
            return Err(Error::NotAnAutomorphism("does not fix 1".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if perm[ring.add(a, b)] != ring.add(perm[a], perm[b]) {
                    return Err(Error::NotAnAutomorphism(format!("not additive at ({a}, {b})")));
                }
                if perm[ring.mul(a, b)] != ring.mul(perm[a], perm[b]) {
                    return Err(Error::NotAnAutomorphism(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(RingAut { perm: perm.into() })
    }

    /// Coordinate swap `(x, y) ↦ (y, x)` on a product `A × A`.
    pub fn swap(ring: &FiniteRing) -> Result<RingAut> {
        let Structure::Product(a, b) = ring.structure() else {
            return Err(Error::NotAnAutomorphism(format!(
                "swap needs a product ring, got {}",
                ring.name()
            )));
        };
        if a.size() != b.size() {
            return Err(Error::NotAnAutomorphism("swap needs factors of equal size".into()));
        }
        let m = b.size();
        let perm = ring.elements().map(|x| (x % m) * m + x / m).collect();
        RingAut::new(ring, perm)
    }

    /// Conjugation `x ↦ u x u⁻¹` by a unit `u`.
    pub fn inner(ring: &FiniteRing, u: Elem) -> Result<RingAut> {
        ring.check_elem(u)?;
        let v = ring
            .inverse_of(u)
            .ok_or_else(|| Error::NotAnAutomorphism(format!("{u} is not a unit")))?;
        let perm = ring.elements().map(|x| ring.mul(ring.mul(u, x), v)).collect();
        RingAut::new(ring, perm)
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.perm[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.perm
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RingAut) -> RingAut {
        RingAut {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
        }
    }

    pub fn inverse(&self) -> RingAut {
        let mut inv = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            inv[y] = x;
        }
        RingAut { perm: inv.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Order in the automorphism group.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = self.compose(&acc);
            k += 1;
        }
        k
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> RingAut {
        let ord = self.order() as i64;
        let e = k.rem_euclid(ord);
        let mut acc = RingAut::identity(self.size());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn commutes_with(&self, other: &RingAut) -> bool {
        self.compose(other) == other.compose(self)
    }
}

/// The full automorphism group of `ring`, identity first, the rest in
/// lexicographic order of their image lists.
///
/// The search assigns images to a small set of ring generators, extends each
/// partial assignment through `+` and `·`, and backtracks as soon as the
/// extension is inconsistent or non-injective.
pub fn automorphisms(ring: &FiniteRing, limits: &Limits) -> Result<Vec<RingAut>> {
    if ring.size() > limits.automorphism_search_cap {
        return Err(Error::AutomorphismSearchCap {
            size: ring.size(),
            cap: limits.automorphism_search_cap,
        });
    }
    let gens = ring_generators(ring);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let ord = ring.additive_order(g);
            let sq = ring.mul(g, g);
            ring.elements()
                .filter(|&y| {
                    let ysq = ring.mul(y, y);
                    ring.additive_order(y) == ord
                        && (sq == g) == (ysq == y)
                        && (sq == ring.zero()) == (ysq == ring.zero())
                })
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut assignment = Vec::with_capacity(gens.len());
    backtrack(ring, &gens, &candidates, &mut assignment, &mut found);
    let mut auts: Vec<RingAut> = found
        .into_iter()
        .map(|perm| RingAut::new(ring, perm))
        .collect::<Result<_>>()?;
    auts.sort();
    auts.dedup();
    Ok(auts)
}

fn backtrack(
    ring: &FiniteRing,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    assignment: &mut Vec<(Elem, Elem)>,
    found: &mut Vec<Vec<Elem>>,
) {
    let level = assignment.len();
    if level == gens.len() {
        if let Some(map) = extend_hom(ring, assignment) {
            if map.iter().all(Option::is_some) {
                found.push(map.into_iter().map(Option::unwrap).collect());
            }
        }
        return;
    }
    for &y in &candidates[level] {
        assignment.push((gens[level], y));
        if extend_hom(ring, assignment).is_some() {
            backtrack(ring, gens, candidates, assignment, found);
        }
        assignment.pop();
    }
}

/// Extends `0 ↦ 0, 1 ↦ 1` plus `assignment` to the subring generated by the
/// assigned elements. Returns `None` if the extension is not a well-defined
/// injective map.
fn extend_hom(ring: &FiniteRing, assignment: &[(Elem, Elem)]) -> Option<Vec<Option<Elem>>> {
    let n = ring.size();
    let mut map: Vec<Option<Elem>> = vec![None; n];
    let mut preimage: Vec<Option<Elem>> = vec![None; n];
    let mut domain = Vec::new();
    let mut insert = |x: Elem, y: Elem, map: &mut Vec<Option<Elem>>, domain: &mut Vec<Elem>| -> bool {
        match map[x] {
            Some(old) => old == y,
            None => {
                if preimage[y].is_some() {
                    return false;
                }
                map[x] = Some(y);
                preimage[y] = Some(x);
                domain.push(x);
                true
            }
        }
    };
    for &(x, y) in [(ring.zero(), ring.zero()), (ring.one(), ring.one())]
        .iter()
        .chain(assignment)
    {
        if !insert(x, y, &mut map, &mut domain) {
            return None;
        }
    }
    let mut k = 0;
    while k < domain.len() {
        let x = domain[k];
        for idx in 0..=k {
            let y = domain[idx];
            for (a, b) in [(x, y), (y, x)] {
                let (ia, ib) = (map[a].unwrap(), map[b].unwrap());
                if !insert(ring.add(a, b), ring.add(ia, ib), &mut map, &mut domain)
                    || !insert(ring.mul(a, b), ring.mul(ia, ib), &mut map, &mut domain)
                {
                    return None;
                }
            }
        }
        k += 1;
    }
    Some(map)
}

/// A greedy set of elements that, together with `1`, generates `ring` under
/// `+` and `·`.
pub fn ring_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut gens = Vec::new();
    loop {
        let identity: Vec<(Elem, Elem)> = gens.iter().map(|&g| (g, g)).collect();
        let covered = extend_hom(ring, &identity).expect("identity map is consistent");
        match covered.iter().position(Option::is_none) {
            Some(x) => gens.push(x),
            None => return gens,
        }
    }
}

/// Closes a set of automorphisms under composition. Used when the ring is too
/// large for exhaustive search but generators are known.
pub fn automorphism_group(ring: &FiniteRing, generators: &[RingAut]) -> Result<Vec<RingAut>> {
    for g in generators {
        if g.size() != ring.size() {
            return Err(Error::NotAnAutomorphism(
                "generator acts on a ring of a different size".into(),
            ));
        }
    }
    let id = RingAut::identity(ring.size());
    let mut seen: HashSet<RingAut> = HashSet::from([id.clone()]);
    let mut group = vec![id];
    let mut k = 0;
    while k < group.len() {
        let current = group[k].clone();
        for g in generators {
            let next = g.compose(&current);
            if seen.insert(next.clone()) {
                group.push(next);
            }
        }
        k += 1;
    }
    group.sort();
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_arithmetic() {
        let r = z(4);
        assert_eq!(r.mul(2, 2), 0);
        assert_eq!(r.mul(3, 3), 1);
        assert_eq!(r.neg(1), 3);
        assert_eq!(FiniteRing::cyclic(0).unwrap_err(), Error::EmptyRing);
    }

    #[test]
    fn zero_ring_is_unital() {
        let r = z(1);
        assert_eq!(r.zero(), r.one());
        assert_eq!(r.idempotents(), vec![0]);
        assert_eq!(automorphisms(&r, &Limits::default()).unwrap().len(), 1);
    }

    #[test]
    fn idempotents_by_scan() {
        assert_eq!(z(4).idempotents(), vec![0, 1]);
        assert_eq!(z(6).idempotents(), vec![0, 1, 3, 4]);
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(z(p).idempotents(), vec![0, 1]);
        }
    }

    #[test]
    fn factory_sizes() {
        let f2 = z(2);
        assert_eq!(FiniteRing::matrix(&f2, 2).unwrap().size(), 16);
        assert_eq!(FiniteRing::upper_triangular(&f2, 2).unwrap().size(), 8);
        assert_eq!(FiniteRing::product_ring(&f2, &z(3)).unwrap().size(), 6);
    }

    #[test]
    fn large_structured_ring_computes_on_demand() {
        // M2(Z4) has 256 elements; M2(Z5) has 625 and skips the tables.
        let m = FiniteRing::matrix(&z(5), 2).unwrap();
        assert_eq!(m.size(), 625);
        assert!(!m.has_tables());
        let limits = Limits::default();
        m.validate(&limits).unwrap();
        let small = FiniteRing::matrix(&z(4), 2).unwrap();
        assert!(small.has_tables());
    }

    #[test]
    fn size_cap_is_enforced() {
        let limits = Limits {
            ring_size_cap: 100,
            ..Limits::default()
        };
        let err = FiniteRing::matrix_with(&z(2), 3, &limits).unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { .. }));
    }

    #[test]
    fn product_of_z2_z3_is_z6() {
        // CRT: x ↦ (x mod 2, x mod 3) carries Z6 arithmetic onto the product tables.
        let p = FiniteRing::product_ring(&z(2), &z(3)).unwrap();
        let z6 = z(6);
        let iso = |x: Elem| (x % 2) * 3 + x % 3;
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(iso(z6.add(a, b)), p.add(iso(a), iso(b)));
                assert_eq!(iso(z6.mul(a, b)), p.mul(iso(a), iso(b)));
            }
        }
    }

    #[test]
    fn table_ring_rejects_bad_tables() {
        // Z2 addition with a multiplication that is not distributive.
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(FiniteRing::from_tables("F2", add.clone(), mul).is_ok());
        let bad = vec![vec![1, 0], vec![0, 1]];
        let err = FiniteRing::from_tables("bad", add, bad).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }), "{err}");
    }

    #[test]
    fn table_ring_f4() {
        // F4 = F2[t]/(t^2+t+1), element a + 2b ↔ a + b t.
        let add: Vec<Vec<Elem>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let mul_poly = |x: usize, y: usize| {
            let (a0, a1, b0, b1) = (x & 1, x >> 1, y & 1, y >> 1);
            let c0 = (a0 * b0 + a1 * b1) % 2;
            let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
            c0 + 2 * c1
        };
        let mul: Vec<Vec<Elem>> = (0..4).map(|a| (0..4).map(|b| mul_poly(a, b)).collect()).collect();
        let f4 = FiniteRing::from_tables("F4", add, mul).unwrap();
        let auts = automorphisms(&f4, &Limits::default()).unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[1].images(), &[0, 1, 3, 2]);
    }

    #[test]
    fn automorphism_counts() {
        let limits = Limits::default();
        assert_eq!(automorphisms(&z(4), &limits).unwrap().len(), 1);
        let f2 = z(2);
        let v4 = FiniteRing::product_ring(&f2, &f2).unwrap();
        let auts = automorphisms(&v4, &limits).unwrap();
        assert_eq!(auts.len(), 2);
        assert!(auts[0].is_identity());
        assert_eq!(auts[1], RingAut::swap(&v4).unwrap());

        let m2 = FiniteRing::matrix(&f2, 2).unwrap();
        let auts = automorphisms(&m2, &limits).unwrap();
        assert_eq!(auts.len(), 6);
        let inner: HashSet<RingAut> = m2
            .units()
            .into_iter()
            .map(|u| RingAut::inner(&m2, u).unwrap())
            .collect();
        assert_eq!(inner, auts.iter().cloned().collect());
    }

    #[test]
    fn automorphism_search_cap() {
        let limits = Limits {
            automorphism_search_cap: 8,
            ..Limits::default()
        };
        let err = automorphisms(&z(9), &limits).unwrap_err();
        assert!(matches!(err, Error::AutomorphismSearchCap { .. }));
    }

    #[test]
    fn supplied_generators_close_to_a_group() {
        let f2 = z(2);
        let v4 = FiniteRing::product_ring(&f2, &f2).unwrap();
        let v16 = FiniteRing::product_ring(&v4, &v4).unwrap();
        let outer = RingAut::swap(&v16).unwrap();
        let group = automorphism_group(&v16, std::slice::from_ref(&outer)).unwrap();
        assert_eq!(group.len(), 2);
        assert!(group[0].is_identity());
        assert_eq!(outer.order(), 2);
        assert_eq!(outer.pow(-1), outer);
    }

    #[test]
    fn automorphisms_form_a_group_and_permute_idempotents() {
        let f2 = z(2);
        let limits = Limits::default();
        let rings = [
            FiniteRing::matrix(&f2, 2).unwrap(),
            FiniteRing::upper_triangular(&f2, 2).unwrap(),
            FiniteRing::product_ring(&FiniteRing::product_ring(&f2, &f2).unwrap(), &f2).unwrap(),
        ];
        for ring in rings {
            let auts = automorphisms(&ring, &limits).unwrap();
            assert!(auts[0].is_identity());
            let set: HashSet<&RingAut> = auts.iter().collect();
            let idem: HashSet<Elem> = ring.idempotents().into_iter().collect();
            for a in &auts {
                assert!(set.contains(&a.inverse()));
                for b in &auts {
                    assert!(set.contains(&a.compose(b)));
                }
                let mapped: HashSet<Elem> = idem.iter().map(|&e| a.apply(e)).collect();
                assert_eq!(mapped, idem);
            }
        }
    }

    #[test]
    fn labels() {
        let f2 = z(2);
        let m2 = FiniteRing::matrix(&f2, 2).unwrap();
        assert_eq!(m2.label(m2.one()), "[[1,0],[0,1]]");
        let t2 = FiniteRing::upper_triangular(&f2, 2).unwrap();
        assert_eq!(t2.label(t2.one()), "[[1,0],[0,1]]");
        let v4 = FiniteRing::product_ring(&f2, &f2).unwrap();
        assert_eq!(v4.label(2), "(1,0)");
    }
}
