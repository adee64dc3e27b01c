//! Strictly totally ordered commutative monoids used as exponent sets.
//!
//! Every supported monoid is cancellative and strictly ordered: `s < s'`
//! forces `s + t < s' + t`. The componentwise (product) order on pairs is
//! partial and therefore rejected.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An element of one of the supported monoids: a scalar for `ℕ`, `ℤ` and
/// `(ℕ≥1, ·)`, a pair for the two-variable monoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidElem {
    Scalar(i64),
    Pair(i64, i64),
}

impl fmt::Display for MonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElem::Scalar(x) => write!(f, "{x}"),
            MonoidElem::Pair(x, y) => write!(f, "{x},{y}"),
        }
    }
}

impl FromStr for MonoidElem {
    type Err = String;

    /// Parses `"3"` or `"1,-2"`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad monoid element '{s}': {e}"))
        };
        match s.split_once(',') {
            Some((a, b)) => Ok(MonoidElem::Pair(parse(a)?, parse(b)?)),
            None => Ok(MonoidElem::Scalar(parse(s)?)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonoidKind {
    /// `(ℕ ∪ {0}, +)` with the usual order.
    NatAdd,
    /// `(ℤ, +)` with the usual order.
    IntAdd,
    NatPairLex,
    NatPairRevLex,
    IntPairLex,
    IntPairRevLex,
    /// `(ℕ≥1, ·)` with the usual order; convolution is Dirichlet convolution.
    NatMulDirichlet,
}

impl MonoidKind {
    pub const ALL: [MonoidKind; 7] = [
        MonoidKind::NatAdd,
        MonoidKind::IntAdd,
        MonoidKind::NatPairLex,
        MonoidKind::NatPairRevLex,
        MonoidKind::IntPairLex,
        MonoidKind::IntPairRevLex,
        MonoidKind::NatMulDirichlet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonoidKind::NatAdd => "NatAdd",
            MonoidKind::IntAdd => "IntAdd",
            MonoidKind::NatPairLex => "NatPairLex",
            MonoidKind::NatPairRevLex => "NatPairRevLex",
            MonoidKind::IntPairLex => "IntPairLex",
            MonoidKind::IntPairRevLex => "IntPairRevLex",
            MonoidKind::NatMulDirichlet => "NatMulDirichlet",
        }
    }

    fn is_pair(self) -> bool {
        matches!(
            self,
            MonoidKind::NatPairLex | MonoidKind::NatPairRevLex | MonoidKind::IntPairLex | MonoidKind::IntPairRevLex
        )
    }
}

/// Order requested alongside a monoid kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderVariant {
    Usual,
    Lex,
    RevLex,
    /// Componentwise order. Partial, so never accepted.
    Product,
}

impl FromStr for OrderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "usual" => Ok(OrderVariant::Usual),
            "lex" | "lexicographic" => Ok(OrderVariant::Lex),
            "revlex" | "reverse-lex" | "reverse_lexicographic" => Ok(OrderVariant::RevLex),
            "product" | "componentwise" => Ok(OrderVariant::Product),
            other => Err(Error::UnsupportedMonoid(format!("unknown order '{other}'"))),
        }
    }
}

/// A strictly totally ordered, cancellative, commutative monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrderedMonoid {
    kind: MonoidKind,
}

impl fmt::Display for OrderedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())
    }
}

impl OrderedMonoid {
    pub fn new(kind: MonoidKind) -> OrderedMonoid {
        OrderedMonoid { kind }
    }

    /// Resolves a kind name plus optional order name.
    ///
    /// Accepts the full kind names (`NatPairLex`, ...) or a base name
    /// (`NatPair`, `IntPair`, `Nat`, `Int`, `NatMul`) combined with an order.
    /// The product order is rejected: the characterisation of left APP series
    /// rings needs a strictly *totally* ordered monoid.
    pub fn from_names(kind: &str, order: Option<&str>) -> Result<OrderedMonoid> {
        let order = order.map(str::parse::<OrderVariant>).transpose()?;
        if order == Some(OrderVariant::Product) {
            return Err(Error::UnsupportedMonoid(
                "the product (componentwise) order is partial; only strictly totally ordered monoids are supported"
                    .into(),
            ));
        }
        if let Some(full) = MonoidKind::ALL.iter().find(|k| k.name().eq_ignore_ascii_case(kind)) {
            let implied = match full {
                MonoidKind::NatPairLex | MonoidKind::IntPairLex => OrderVariant::Lex,
                MonoidKind::NatPairRevLex | MonoidKind::IntPairRevLex => OrderVariant::RevLex,
                _ => OrderVariant::Usual,
            };
            return match order {
                None => Ok(OrderedMonoid::new(*full)),
                Some(o) if o == implied => Ok(OrderedMonoid::new(*full)),
                Some(o) => Err(Error::UnsupportedMonoid(format!(
                    "{} does not support order {o:?}",
                    full.name()
                ))),
            };
        }
        let kind = match (kind.to_ascii_lowercase().as_str(), order) {
            ("nat" | "natadd", None | Some(OrderVariant::Usual)) => MonoidKind::NatAdd,
            ("int" | "intadd", None | Some(OrderVariant::Usual)) => MonoidKind::IntAdd,
            ("natmul" | "dirichlet", None | Some(OrderVariant::Usual)) => MonoidKind::NatMulDirichlet,
            ("natpair", Some(OrderVariant::Lex)) => MonoidKind::NatPairLex,
            ("natpair", Some(OrderVariant::RevLex)) => MonoidKind::NatPairRevLex,
            ("intpair", Some(OrderVariant::Lex)) => MonoidKind::IntPairLex,
            ("intpair", Some(OrderVariant::RevLex)) => MonoidKind::IntPairRevLex,
            (k, o) => {
                return Err(Error::UnsupportedMonoid(format!(
                    "unsupported kind/order combination '{k}' / {o:?}"
                )))
            }
        };
        Ok(OrderedMonoid::new(kind))
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    pub fn zero(&self) -> MonoidElem {
        match self.kind {
            MonoidKind::NatAdd | MonoidKind::IntAdd => MonoidElem::Scalar(0),
            MonoidKind::NatMulDirichlet => MonoidElem::Scalar(1),
            _ => MonoidElem::Pair(0, 0),
        }
    }

    /// Generators used to define `ω`. `(ℕ≥1, ·)` is generated by the primes,
    /// which are not listed.
    pub fn generators(&self) -> Vec<MonoidElem> {
        match self.kind {
            MonoidKind::NatAdd | MonoidKind::IntAdd => vec![MonoidElem::Scalar(1)],
            MonoidKind::NatMulDirichlet => vec![],
            _ => vec![MonoidElem::Pair(1, 0), MonoidElem::Pair(0, 1)],
        }
    }

    /// Whether `zero ≤ s` for every element, so that finite supports need no window.
    pub fn is_positively_ordered(&self) -> bool {
        matches!(
            self.kind,
            MonoidKind::NatAdd | MonoidKind::NatMulDirichlet | MonoidKind::NatPairLex | MonoidKind::NatPairRevLex
        )
    }

    pub fn contains(&self, s: MonoidElem) -> bool {
        match (self.kind, s) {
            (MonoidKind::NatAdd, MonoidElem::Scalar(x)) => x >= 0,
            (MonoidKind::IntAdd, MonoidElem::Scalar(_)) => true,
            (MonoidKind::NatMulDirichlet, MonoidElem::Scalar(x)) => x >= 1,
            (MonoidKind::NatPairLex | MonoidKind::NatPairRevLex, MonoidElem::Pair(x, y)) => x >= 0 && y >= 0,
            (MonoidKind::IntPairLex | MonoidKind::IntPairRevLex, MonoidElem::Pair(..)) => true,
            _ => false,
        }
    }

    pub fn check(&self, s: MonoidElem) -> Result<MonoidElem> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(Error::NotInMonoid {
                element: s.to_string(),
                monoid: self.to_string(),
            })
        }
    }

    /// The monoid operation. Panics if the operands do not belong to the
    /// monoid or the result overflows `i64`.
    pub fn op(&self, a: MonoidElem, b: MonoidElem) -> MonoidElem {
        match (a, b) {
            (MonoidElem::Scalar(x), MonoidElem::Scalar(y)) if !self.kind.is_pair() => {
                let z = if self.kind == MonoidKind::NatMulDirichlet {
                    x.checked_mul(y)
                } else {
                    x.checked_add(y)
                };
                MonoidElem::Scalar(z.expect("monoid element overflow"))
            }
            (MonoidElem::Pair(x1, y1), MonoidElem::Pair(x2, y2)) if self.kind.is_pair() => MonoidElem::Pair(
                x1.checked_add(x2).expect("monoid element overflow"),
                y1.checked_add(y2).expect("monoid element overflow"),
            ),
            _ => panic!("elements {a} and {b} do not belong to {self}"),
        }
    }

    /// The strict total order.
    pub fn cmp(&self, a: &MonoidElem, b: &MonoidElem) -> Ordering {
        match (a, b) {
            (MonoidElem::Scalar(x), MonoidElem::Scalar(y)) => x.cmp(y),
            (MonoidElem::Pair(x1, y1), MonoidElem::Pair(x2, y2)) => match self.kind {
                MonoidKind::NatPairRevLex | MonoidKind::IntPairRevLex => y1.cmp(y2).then(x1.cmp(x2)),
                _ => x1.cmp(x2).then(y1.cmp(y2)),
            },
            _ => panic!("cannot compare {a} and {b} in {self}"),
        }
    }

    pub fn lt(&self, a: &MonoidElem, b: &MonoidElem) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    /// The least element of a nonempty set.
    pub fn min_element<'a, I>(&self, set: I) -> Result<MonoidElem>
    where
        I: IntoIterator<Item = &'a MonoidElem>,
    {
        set.into_iter()
            .min_by(|a, b| self.cmp(a, b))
            .copied()
            .ok_or(Error::EmptySet)
    }

    /// All pairs `(u, v)` with `u + v = s`, ordered by `u`.
    ///
    /// For `ℤ`-based monoids there are infinitely many, so a window is
    /// required and both `u` and `v` are restricted to it. For the other
    /// monoids the window is optional and filters the same way.
    pub fn decompositions(
        &self,
        s: MonoidElem,
        window: Option<&MonoidInterval>,
    ) -> Result<Vec<(MonoidElem, MonoidElem)>> {
        self.check(s)?;
        let in_window = |x: &MonoidElem| window.is_none_or(|w| w.contains(x));
        let mut out: Vec<(MonoidElem, MonoidElem)> = match (self.kind, s) {
            (MonoidKind::NatAdd, MonoidElem::Scalar(n)) => (0..=n)
                .map(|u| (MonoidElem::Scalar(u), MonoidElem::Scalar(n - u)))
                .collect(),
            (MonoidKind::NatMulDirichlet, MonoidElem::Scalar(n)) => (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| (MonoidElem::Scalar(d), MonoidElem::Scalar(n / d)))
                .collect(),
            (MonoidKind::NatPairLex | MonoidKind::NatPairRevLex, MonoidElem::Pair(a, b)) => (0..=a)
                .flat_map(|i| (0..=b).map(move |j| (i, j)))
                .map(|(i, j)| (MonoidElem::Pair(i, j), MonoidElem::Pair(a - i, b - j)))
                .collect(),
            (MonoidKind::IntAdd | MonoidKind::IntPairLex | MonoidKind::IntPairRevLex, _) => {
                let w = window.ok_or_else(|| Error::WindowRequired(self.to_string()))?;
                w.elements(self)
                    .into_iter()
                    .filter_map(|u| {
                        let v = match (s, u) {
                            (MonoidElem::Scalar(x), MonoidElem::Scalar(y)) => MonoidElem::Scalar(x - y),
                            (MonoidElem::Pair(x1, y1), MonoidElem::Pair(x2, y2)) => MonoidElem::Pair(x1 - x2, y1 - y2),
                            _ => return None,
                        };
                        Some((u, v))
                    })
                    .collect()
            }
            _ => unreachable!("checked membership"),
        };
        out.retain(|(u, v)| in_window(u) && in_window(v));
        out.sort_by(|a, b| self.cmp(&a.0, &b.0));
        Ok(out)
    }
}

/// A finite box of monoid elements, `lo ≤ x ≤ hi` coordinatewise.
///
/// For the scalar monoids this is exactly an order interval. For pairs it is
/// the coordinate box, which is finite even where the lexicographic interval
/// is not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoidInterval {
    pub lo: MonoidElem,
    pub hi: MonoidElem,
}

impl MonoidInterval {
    pub fn between(lo: MonoidElem, hi: MonoidElem) -> MonoidInterval {
        MonoidInterval { lo, hi }
    }

    /// `{zero ≤ s ≤ bound}` for ℕ-based monoids; `[-bound, bound]` per
    /// coordinate for ℤ-based ones.
    pub fn up_to(monoid: &OrderedMonoid, bound: i64) -> MonoidInterval {
        match monoid.kind() {
            MonoidKind::NatAdd => Self::between(MonoidElem::Scalar(0), MonoidElem::Scalar(bound)),
            MonoidKind::NatMulDirichlet => Self::between(MonoidElem::Scalar(1), MonoidElem::Scalar(bound.max(1))),
            MonoidKind::IntAdd => Self::between(MonoidElem::Scalar(-bound), MonoidElem::Scalar(bound)),
            MonoidKind::NatPairLex | MonoidKind::NatPairRevLex => {
                Self::between(MonoidElem::Pair(0, 0), MonoidElem::Pair(bound, bound))
            }
            MonoidKind::IntPairLex | MonoidKind::IntPairRevLex => {
                Self::between(MonoidElem::Pair(-bound, -bound), MonoidElem::Pair(bound, bound))
            }
        }
    }

    pub fn contains(&self, s: &MonoidElem) -> bool {
        match (self.lo, self.hi, *s) {
            (MonoidElem::Scalar(lo), MonoidElem::Scalar(hi), MonoidElem::Scalar(x)) => lo <= x && x <= hi,
            (MonoidElem::Pair(a, b), MonoidElem::Pair(c, d), MonoidElem::Pair(x, y)) => {
                a <= x && x <= c && b <= y && y <= d
            }
            _ => false,
        }
    }

    /// Elements of the window that belong to `monoid`, in monoid order.
    pub fn elements(&self, monoid: &OrderedMonoid) -> Vec<MonoidElem> {
        let mut out: Vec<MonoidElem> = match (self.lo, self.hi) {
            (MonoidElem::Scalar(lo), MonoidElem::Scalar(hi)) => (lo..=hi).map(MonoidElem::Scalar).collect(),
            (MonoidElem::Pair(a, b), MonoidElem::Pair(c, d)) => (a..=c)
                .flat_map(|x| (b..=d).map(move |y| MonoidElem::Pair(x, y)))
                .collect(),
            _ => Vec::new(),
        };
        out.retain(|s| monoid.contains(*s));
        out.sort_by(|x, y| monoid.cmp(x, y));
        out
    }
}
