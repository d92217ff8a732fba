//! Brute-force ground truth on small instances.
//!
//! Everything here works on explicit element sets: vectors over `Z/p^s`
//! packed into a `u64` in base `p^s`. Nothing in this module uses the ideal
//! classification or the dual tables, so it can check them.

use std::collections::HashSet;

use crate::chainring::ChainRing;
use crate::crt::PairElem;
use crate::error::{Error, Result};
use crate::modring::Zps;
use crate::par::Exec;

/// Default bound on the size of sets the oracle will build.
pub const DEFAULT_BOUND: u64 = 1 << 16;
/// Bound on the ring size for exhaustive ideal search.
pub const IDEAL_SEARCH_BOUND: u64 = 1 << 12;
/// Bound on the ambient space scanned by [`dual_bruteforce`].
pub const DUAL_BOUND: u64 = 1 << 24;

pub type ElementSet = HashSet<u64>;

/// Fixed-width packing of `len` residues mod `q` into one integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codec {
    pub zps: Zps,
    pub len: usize,
}

impl Codec {
    pub fn new(zps: Zps, len: usize) -> Self {
        Codec { zps, len }
    }

    /// `q^len`, if it fits.
    pub fn size(&self) -> Option<u64> {
        self.zps.modulus().checked_pow(self.len as u32)
    }

    pub fn encode(&self, v: &[u64]) -> u64 {
        debug_assert_eq!(v.len(), self.len);
        let q = self.zps.modulus();
        v.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn decode(&self, mut x: u64) -> Vec<u64> {
        let q = self.zps.modulus();
        (0..self.len)
            .map(|_| {
                let c = x % q;
                x /= q;
                c
            })
            .collect()
    }

    /// Coordinatewise sum of two packed vectors.
    fn add(&self, mut a: u64, mut b: u64) -> u64 {
        let q = self.zps.modulus();
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.len {
            out += self.zps.add(a % q, b % q) * place;
            place *= q;
            a /= q;
            b /= q;
        }
        out
    }
}

/// The additive subgroup generated by `gens` (which, for modules over
/// `Z/p^s`, is also the submodule they generate).
pub fn span(codec: Codec, gens: &[Vec<u64>], bound: u64) -> Result<ElementSet> {
    let mut set: ElementSet = HashSet::from([0]);
    let mut members: Vec<u64> = vec![0];
    for g in gens {
        let g = codec.encode(g);
        if set.contains(&g) {
            continue;
        }
        // cosets S + c g for c below the order of g modulo S
        let mut multiple = g;
        let base = members.clone();
        while !set.contains(&multiple) {
            for &s in &base {
                let e = codec.add(s, multiple);
                if set.insert(e) {
                    members.push(e);
                }
            }
            if members.len() as u64 > bound {
                return Err(Error::BoundExceeded {
                    size: format!("more than {}", bound),
                    bound,
                });
            }
            multiple = codec.add(multiple, g);
        }
    }
    Ok(set)
}

/// A small generating set of an additive group, found greedily.
pub fn generating_set(codec: Codec, set: &ElementSet) -> Vec<Vec<u64>> {
    let mut elems: Vec<u64> = set.iter().copied().collect();
    elems.sort_unstable();
    let mut gens = Vec::new();
    let mut spanned: ElementSet = HashSet::from([0]);
    for e in elems {
        if spanned.contains(&e) {
            continue;
        }
        gens.push(codec.decode(e));
        spanned = span(codec, &gens, u64::MAX).expect("unbounded");
        if spanned.len() == set.len() {
            break;
        }
    }
    gens
}

fn pair_vec(ring: &ChainRing, e: &PairElem) -> Vec<u64> {
    let dim = ring.dim();
    let mut v = ring.reduce(&e.a).padded(dim);
    v.extend(ring.reduce(&e.b).padded(dim));
    v
}

/// Packing for `R_i + u R_i`: the `a` coefficients, then the `b` coefficients.
pub fn pair_codec(ring: &ChainRing) -> Codec {
    Codec::new(ring.base(), 2 * ring.dim())
}

/// Encodes a pair element with [`pair_codec`].
pub fn encode_pair(ring: &ChainRing, e: &PairElem) -> u64 {
    pair_codec(ring).encode(&pair_vec(ring, e))
}

/// The ideal of `R_i + u R_i` generated by `gens`: the additive span of
/// `x^j g` and `u x^j g`.
pub fn closure(gens: &[PairElem], ring: &ChainRing, bound: u64) -> Result<ElementSet> {
    let codec = pair_codec(ring);
    let size = codec.size().filter(|&s| s <= bound).ok_or(Error::BoundExceeded {
        size: format!("{}^{}", ring.base().modulus(), codec.len),
        bound,
    })?;
    let x = ring.x();
    let mut module_gens = Vec::new();
    for g in gens {
        let mut cur = PairElem::new(ring.reduce(&g.a), ring.reduce(&g.b));
        for _ in 0..ring.dim() {
            module_gens.push(pair_vec(ring, &cur));
            module_gens.push(pair_vec(ring, &PairElem::new(ring.zero(), cur.a.clone())));
            cur = PairElem::new(ring.mul(&cur.a, &x), ring.mul(&cur.b, &x));
        }
    }
    span(codec, &module_gens, size)
}

/// Every ideal of `R_i + u R_i`, found by closing each single element and
/// each pair of elements. Fails unless the collection is closed under sums
/// and intersections.
pub fn all_ideals_bruteforce(ring: &ChainRing, exec: Exec) -> Result<Vec<ElementSet>> {
    let codec = pair_codec(ring);
    let size = codec
        .size()
        .filter(|&s| s <= IDEAL_SEARCH_BOUND)
        .ok_or(Error::BoundExceeded {
            size: format!("{}^{}", ring.base().modulus(), codec.len),
            bound: IDEAL_SEARCH_BOUND,
        })?;
    let dim = ring.dim();
    let z = ring.base();
    let to_pair = |v: &[u64]| {
        PairElem::new(
            crate::modring::Poly::from_coeffs(z, v[..dim].to_vec()),
            crate::modring::Poly::from_coeffs(z, v[dim..].to_vec()),
        )
    };
    let principal: Vec<ElementSet> = exec
        .map_range(size, |e| closure(&[to_pair(&codec.decode(e))], ring, size))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut ideals = dedup_sets(principal);
    let firsts: Vec<Vec<Vec<u64>>> = ideals
        .iter()
        .map(|s| generating_set(codec, s))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..firsts.len() {
        for j in i + 1..firsts.len() {
            pairs.push((i, j));
        }
    }
    let sums: Vec<ElementSet> = exec
        .map(pairs, |(i, j)| {
            let mut g = firsts[i].clone();
            g.extend(firsts[j].iter().cloned());
            span(codec, &g, size)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    ideals.extend(sums);
    let ideals = dedup_sets(ideals);

    let keys: HashSet<Vec<u64>> = ideals.iter().map(sorted).collect();
    for a in &ideals {
        for b in &ideals {
            let inter: ElementSet = a.intersection(b).copied().collect();
            let mut g = generating_set(codec, a);
            g.extend(generating_set(codec, b));
            let sum = span(codec, &g, size)?;
            if !keys.contains(&sorted(&inter)) || !keys.contains(&sorted(&sum)) {
                return Err(Error::InternalInconsistency(
                    "ideal search is not closed under sums and intersections".into(),
                ));
            }
        }
    }
    Ok(ideals)
}

fn sorted(s: &ElementSet) -> Vec<u64> {
    let mut v: Vec<u64> = s.iter().copied().collect();
    v.sort_unstable();
    v
}

fn dedup_sets(sets: Vec<ElementSet>) -> Vec<ElementSet> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in sets {
        if seen.insert(sorted(&s)) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (std::cmp::Reverse(s.len()), sorted(s)));
    out
}

/// Packing for codewords of length `len` over `Z/p^s + u Z/p^s`: the
/// `a` parts of all symbols, then the `b` parts.
pub fn word_codec(zps: Zps, len: usize) -> Codec {
    Codec::new(zps, 2 * len)
}

/// `{v : [v, c] = 0 for all c ∈ set}` by scanning the whole ambient space.
pub fn dual_bruteforce(set: &ElementSet, zps: Zps, len: usize, exec: Exec) -> Result<ElementSet> {
    let codec = word_codec(zps, len);
    let size = codec.size().filter(|&s| s <= DUAL_BOUND).ok_or(Error::BoundExceeded {
        size: format!("{}^{}", zps.modulus(), 2 * len),
        bound: DUAL_BOUND,
    })?;
    let gens = generating_set(codec, set);
    let hits = exec.filter_range(size, |e| {
        let v = codec.decode(e);
        gens.iter().all(|g| {
            let (mut a, mut b) = (0u64, 0u64);
            for j in 0..len {
                a = zps.add(a, zps.mul(v[j], g[j]));
                b = zps.add(b, zps.mul(v[j], g[len + j]));
                b = zps.add(b, zps.mul(v[len + j], g[j]));
            }
            a == 0 && b == 0
        })
    });
    Ok(hits.into_iter().collect())
}
