//! Named example rings and automorphisms used by the tests, the acceptance
//! suite and the CLI.

use crate::ring::{Elem, FiniteRing, RingAut, Structure};
use crate::{Error, Result};

/// Largest `n` for which `Zn` is listed.
pub const MAX_CYCLIC: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalleryEntry {
    pub name: String,
    pub size: usize,
    pub description: String,
    /// Action names accepted by [`resolve_action`] for this ring.
    pub actions: Vec<String>,
}

const NAMED: [(&str, usize, &str, &[&str]); 7] = [
    (
        "M2F2",
        16,
        "2x2 matrices over F2",
        &["identity", "inner:11", "inner:14"],
    ),
    ("T2F2", 8, "upper triangular 2x2 matrices over F2", &["identity"]),
    ("F2xF2", 4, "F2 x F2", &["identity", "swap"]),
    ("F2xF3", 6, "F2 x F3 (isomorphic to Z6)", &["identity"]),
    ("F4", 4, "field with four elements", &["identity", "frobenius"]),
    ("F2^4", 16, "(F2 x F2) x (F2 x F2)", &["identity", "swap", "swap-inner"]),
    ("Z2xZ4", 8, "Z2 x Z4", &["identity"]),
];

/// Every gallery entry: `Z1` to `Z64`, then the named rings.
pub fn gallery() -> Vec<GalleryEntry> {
    let cyclic = (1..=MAX_CYCLIC).map(|n| GalleryEntry {
        name: format!("Z{n}"),
        size: n,
        description: if is_prime(n) {
            format!("integers mod {n} (the field F{n})")
        } else {
            format!("integers mod {n}")
        },
        actions: vec!["identity".into()],
    });
    let named = NAMED.iter().map(|(name, size, description, actions)| GalleryEntry {
        name: name.to_string(),
        size: *size,
        description: description.to_string(),
        actions: actions.iter().map(|a| a.to_string()).collect(),
    });
    cyclic.chain(named).collect()
}

pub fn gallery_names() -> Vec<String> {
    gallery().into_iter().map(|e| e.name).collect()
}

/// Entries with at most `max_size` elements.
pub fn gallery_up_to(max_size: usize) -> Vec<GalleryEntry> {
    gallery().into_iter().filter(|e| e.size <= max_size).collect()
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn f4() -> Result<FiniteRing> {
    // 0, 1, a, a + 1 with a^2 = a + 1; addition is XOR on the bit encoding.
    let add = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    let log = |x: Elem| [0, 0, 1, 2][x];
    let exp = [1, 2, 3];
    let mul = (0..4)
        .map(|x| {
            (0..4)
                .map(|y| {
                    if x == 0 || y == 0 {
                        0
                    } else {
                        exp[(log(x) + log(y)) % 3]
                    }
                })
                .collect()
        })
        .collect();
    FiniteRing::from_tables("F4", add, mul)
}

/// Looks up a gallery ring. `F2`, `F3`, `F5`, `F7` are accepted as aliases
/// of the corresponding `Zp`.
pub fn gallery_ring(name: &str) -> Result<FiniteRing> {
    let z = |n| FiniteRing::cyclic(n);
    match name {
        "F2" => return z(2),
        "F3" => return z(3),
        "F5" => return z(5),
        "F7" => return z(7),
        "M2F2" => return FiniteRing::matrix(&z(2)?, 2),
        "T2F2" => return FiniteRing::upper_triangular(&z(2)?, 2),
        "F2xF2" => return FiniteRing::product_ring(&z(2)?, &z(2)?),
        "F2xF3" => return FiniteRing::product_ring(&z(2)?, &z(3)?),
        "F4" => return f4(),
        "Z2xZ4" => return FiniteRing::product_ring(&z(2)?, &z(4)?),
        "F2^4" => {
            let v4 = FiniteRing::product_ring(&z(2)?, &z(2)?)?;
            return FiniteRing::product_ring(&v4, &v4);
        }
        _ => {}
    }
    if let Some(n) = name.strip_prefix('Z').and_then(|d| d.parse::<usize>().ok()) {
        if (1..=MAX_CYCLIC).contains(&n) {
            return z(n);
        }
    }
    Err(Error::UnknownName(format!("gallery ring '{name}'")))
}

/// Resolves an automorphism by name:
///
/// * `identity`
/// * `swap`: `(x, y) ↦ (y, x)` on a product with equal factors
/// * `swap-inner`: swap inside each factor of a product of products
/// * `inner:u`: conjugation by the unit `u`
/// * `frobenius`: `x ↦ x^p` where `p` is the characteristic
/// * `perm:i0,i1,...`: an explicit image list
pub fn resolve_action(ring: &FiniteRing, spec: &str) -> Result<RingAut> {
    let spec = spec.trim();
    match spec {
        "identity" | "id" => return Ok(RingAut::identity(ring.size())),
        "swap" => return RingAut::swap(ring),
        "swap-inner" => return swap_inner(ring),
        "frobenius" => return frobenius(ring),
        _ => {}
    }
    if let Some(u) = spec.strip_prefix("inner:") {
        let u = u
            .trim()
            .parse::<Elem>()
            .map_err(|_| Error::NotAnAutomorphism(format!("bad unit in '{spec}'")))?;
        return RingAut::inner(ring, u);
    }
    if let Some(list) = spec.strip_prefix("perm:") {
        let perm = list
            .split(',')
            .map(|t| t.trim().parse::<Elem>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Error::NotAnAutomorphism(format!("bad image list in '{spec}'")))?;
        return RingAut::new(ring, perm);
    }
    Err(Error::UnknownName(format!("action '{spec}'")))
}

fn swap_inner(ring: &FiniteRing) -> Result<RingAut> {
    let Structure::Product(a, b) = ring.structure() else {
        return Err(Error::NotAnAutomorphism(
            "swap-inner needs a product of products".into(),
        ));
    };
    let sa = RingAut::swap(a)?;
    let sb = RingAut::swap(b)?;
    let m = b.size();
    let perm = ring.elements().map(|x| sa.apply(x / m) * m + sb.apply(x % m)).collect();
    RingAut::new(ring, perm)
}

fn frobenius(ring: &FiniteRing) -> Result<RingAut> {
    let p = ring.additive_order(ring.one());
    if !is_prime(p) {
        return Err(Error::NotAnAutomorphism(format!(
            "frobenius needs prime characteristic, {} has characteristic {p}",
            ring.name()
        )));
    }
    let perm = ring
        .elements()
        .map(|x| ring.product(std::iter::repeat_n(x, p)))
        .collect();
    RingAut::new(ring, perm)
}

/// A gallery ring paired with one of its named automorphisms.
#[derive(Clone, Debug)]
pub struct GalleryPair {
    pub ring_name: String,
    pub action_name: String,
    pub ring: FiniteRing,
    pub alpha: RingAut,
}

impl GalleryPair {
    pub fn label(&self) -> String {
        format!("{}/{}", self.ring_name, self.action_name)
    }
}

/// Every `(ring, automorphism)` pair in the gallery with `|R| <= max_size`.
pub fn gallery_pairs(max_size: usize) -> Result<Vec<GalleryPair>> {
    let mut out = Vec::new();
    for entry in gallery_up_to(max_size) {
        let ring = gallery_ring(&entry.name)?;
        for action in &entry.actions {
            out.push(GalleryPair {
                ring_name: entry.name.clone(),
                action_name: action.clone(),
                alpha: resolve_action(&ring, action)?,
                ring: ring.clone(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_contains_required_rings() {
        let names = gallery_names();
        for n in ["Z1", "Z4", "Z64", "M2F2", "T2F2", "F2xF2", "F2xF3"] {
            assert!(names.iter().any(|x| x == n), "{n} missing");
        }
        assert!(gallery_ring("Z65").is_err());
        assert!(gallery_ring("Q8").is_err());
    }

    #[test]
    fn every_entry_resolves_with_its_actions() {
        for pair in gallery_pairs(usize::MAX).unwrap() {
            assert_eq!(pair.ring.size(), pair.alpha.size(), "{}", pair.label());
        }
        for entry in gallery() {
            assert_eq!(gallery_ring(&entry.name).unwrap().size(), entry.size);
        }
    }

    #[test]
    fn named_actions() {
        let m2 = gallery_ring("M2F2").unwrap();
        let a = resolve_action(&m2, "inner:11").unwrap();
        assert!(!a.is_identity());
        assert_eq!(a.order(), 2);
        assert!(resolve_action(&m2, "inner:0").is_err());
        let f4 = gallery_ring("F4").unwrap();
        assert_eq!(resolve_action(&f4, "frobenius").unwrap().images(), &[0, 1, 3, 2]);
        assert!(resolve_action(&gallery_ring("Z4").unwrap(), "frobenius").is_err());
        let v16 = gallery_ring("F2^4").unwrap();
        let s = resolve_action(&v16, "swap").unwrap();
        let t = resolve_action(&v16, "swap-inner").unwrap();
        assert!(s.commutes_with(&t));
        assert_ne!(s, t);
        let z4 = gallery_ring("Z4").unwrap();
        assert_eq!(resolve_action(&z4, "perm:0,1,2,3").unwrap(), RingAut::identity(4));
        assert!(resolve_action(&z4, "perm:0,3,2,1").is_err());
        assert!(resolve_action(&z4, "twist").is_err());
    }
}
