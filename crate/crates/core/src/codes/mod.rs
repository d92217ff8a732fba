//! Codes as tuples of per-factor ideals, their codewords, duals and
//! self-duality.

mod dual;
mod selfdual;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::crt::{ambient_mul, Decomposition};
use crate::error::{Error, Result};
use crate::factorization::{Context, Params, Variant};
use crate::ideals::IdealSpec;
use crate::modring::{Poly, Zps};
use crate::oracle::{self, word_codec, ElementSet};

pub use dual::{dual_code, dual_component};
pub use selfdual::{
    count_self_dual, enumerate_self_dual, fixed_block_candidates, fixed_block_condition, is_self_dual,
};

/// Default cap on the number of codewords [`materialize`] will build.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// A code `⊕ θ_i C_i`, one ideal per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub variant: Variant,
    pub components: Vec<IdealSpec>,
}

impl CodeSpec {
    pub fn new(variant: Variant, components: Vec<IdealSpec>) -> Self {
        CodeSpec { variant, components }
    }

    /// Checks the component count and every component's parameters.
    pub fn validate(&self, ctx: &Context) -> Result<()> {
        if self.components.len() != ctx.r() {
            return Err(Error::LengthMismatch(self.components.len(), ctx.r()));
        }
        for (i, c) in self.components.iter().enumerate() {
            c.validate(ctx.p, ctx.degree(i), ctx.nu())?;
        }
        Ok(())
    }

    /// The JSON form, with `w` chosen so the code reads as a plain code.
    pub fn to_json(&self, ctx: &Context) -> CodeJson {
        CodeJson {
            p: ctx.p,
            s: ctx.s,
            k: ctx.k,
            n: ctx.n,
            w: ctx.w_of(self.variant),
            components: self.components.clone(),
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `{p, s, k, n, w, components}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub p: u64,
    pub s: u32,
    pub k: u32,
    pub n: u64,
    pub w: u64,
    pub components: Vec<IdealSpec>,
}

impl CodeJson {
    pub fn params(&self) -> Params {
        Params::new(self.p, self.s, self.k, self.n, self.w)
    }

    /// The plain code this describes in `ctx`, which must have matching parameters.
    pub fn into_spec(self, ctx: &Context) -> Result<CodeSpec> {
        if self.params() != ctx.params() {
            return Err(Error::InvalidInput("code parameters differ from the context".into()));
        }
        let spec = CodeSpec::new(Variant::Plain, self.components);
        spec.validate(ctx)?;
        Ok(spec)
    }
}

/// `Π |C_i|`.
pub fn code_cardinality(ctx: &Context, code: &CodeSpec) -> BigUint {
    code.components
        .iter()
        .enumerate()
        .map(|(i, c)| c.cardinality(ctx.p, ctx.degree(i), ctx.nu()))
        .product()
}

/// A word of `(Z/p^s + u Z/p^s)^N`, each symbol `a + bu` stored as `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword(pub Vec<(u64, u64)>);

impl Codeword {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Unpacks an [`oracle::word_codec`] encoding.
    pub fn decode(zps: Zps, len: usize, x: u64) -> Self {
        let v = word_codec(zps, len).decode(x);
        Codeword((0..len).map(|j| (v[j], v[len + j])).collect())
    }

    pub fn encode(&self, zps: Zps) -> u64 {
        let len = self.len();
        let mut v: Vec<u64> = self.0.iter().map(|s| s.0).collect();
        v.extend(self.0.iter().map(|s| s.1));
        word_codec(zps, len).encode(&v)
    }

    /// `(γ c_{N-1}, c_0, …, c_{N-2})`.
    pub fn shift(&self, zps: Zps, gamma: (u64, u64)) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let last = sym_mul(zps, gamma, self.0[n - 1]);
        let mut out = vec![last];
        out.extend_from_slice(&self.0[..n - 1]);
        Codeword(out)
    }

    pub fn scale(&self, zps: Zps, c: (u64, u64)) -> Self {
        Codeword(self.0.iter().map(|&x| sym_mul(zps, c, x)).collect())
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, b)| format!("{a}+{b}u")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn sym_mul(z: Zps, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
    (z.mul(x.0, y.0), z.add(z.mul(x.0, y.1), z.mul(x.1, y.0)))
}

/// `Σ a_j b_j` with `(a + ub)(c + ud) = ac + u(ad + bc)`.
pub fn inner_product(zps: Zps, a: &Codeword, b: &Codeword) -> Result<(u64, u64)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.0.iter().zip(&b.0).fold((0, 0), |acc, (&x, &y)| {
        let m = sym_mul(zps, x, y);
        (zps.add(acc.0, m.0), zps.add(acc.1, m.1))
    }))
}

/// Every codeword of `code`, packed with [`oracle::word_codec`].
pub fn materialize(dec: &Decomposition, code: &CodeSpec, cap: u64) -> Result<ElementSet> {
    let ctx = dec.ctx();
    code.validate(ctx)?;
    let size = code_cardinality(ctx, code);
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded { size: size.to_string(), cap });
    }
    let v = code.variant;
    let z = ctx.ring();
    let n = ctx.len;
    let x = Poly::var(z);
    let mut gens = Vec::new();
    for (i, spec) in code.components.iter().enumerate() {
        let ring = dec.ring(crate::chainring::RingId { factor: i, variant: v });
        let th = dec.theta(v, i);
        for g in spec.generators(ring)? {
            let mut a = ambient_mul(ctx, v, th, &g.a);
            let mut b = ambient_mul(ctx, v, th, &g.b);
            for _ in 0..n {
                let mut word = a.padded(n);
                word.extend(b.padded(n));
                gens.push(word);
                let mut ua = vec![0; n];
                ua.extend(a.padded(n));
                gens.push(ua);
                a = ambient_mul(ctx, v, &a, &x);
                b = ambient_mul(ctx, v, &b, &x);
            }
        }
    }
    let set = oracle::span(word_codec(z, n), &gens, cap)?;
    if BigUint::from(set.len()) != size {
        return Err(Error::InternalInconsistency(format!(
            "materialized {} codewords, expected {size}",
            set.len()
        )));
    }
    Ok(set)
}

/// Whether `set` is closed under addition, multiplication by `u`, and the
/// `γ`-twisted shift. Scalars of `Z/p^s` come for free once sums are closed.
pub fn is_constacyclic(zps: Zps, len: usize, set: &ElementSet, gamma: (u64, u64)) -> bool {
    let codec = word_codec(zps, len);
    if !set.contains(&0) {
        return false;
    }
    let gens = oracle::generating_set(codec, set);
    match oracle::span(codec, &gens, set.len() as u64) {
        Ok(spanned) if spanned.len() == set.len() => {}
        _ => return false,
    }
    gens.iter().all(|g| {
        let w = Codeword((0..len).map(|j| (g[j], g[len + j])).collect());
        set.contains(&w.shift(zps, gamma).encode(zps)) && set.contains(&w.scale(zps, (0, 1)).encode(zps))
    })
}

/// Decodes a packed set into codewords, sorted by encoding.
pub fn codewords(zps: Zps, len: usize, set: &ElementSet) -> Vec<Codeword> {
    let mut keys: Vec<u64> = set.iter().copied().collect();
    keys.sort_unstable();
    keys.into_iter().map(|x| Codeword::decode(zps, len, x)).collect()
}

/// Encodes a list of codewords into a set.
pub fn to_set(zps: Zps, words: &[Codeword]) -> ElementSet {
    words.iter().map(|w| w.encode(zps)).collect::<HashSet<_>>()
}

/// Every code of the given variant, components in enumeration order
/// (lexicographic over the factor tuple).
pub fn enumerate_codes(ctx: &Context, variant: Variant) -> impl Iterator<Item = CodeSpec> + '_ {
    let lists: Vec<Vec<IdealSpec>> = (0..ctx.r())
        .map(|i| crate::ideals::enumerate_ideals(ctx.p, ctx.degree(i), ctx.nu()).collect())
        .collect();
    product(lists).map(move |components| CodeSpec::new(variant, components))
}

/// Cartesian product of lists, first list varying slowest.
pub(crate) fn product<T: Clone>(lists: Vec<Vec<T>>) -> impl Iterator<Item = Vec<T>> {
    let empty = lists.iter().any(|l| l.is_empty());
    let mut idx = vec![0usize; lists.len()];
    let mut done = empty;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let item: Vec<T> = idx.iter().zip(&lists).map(|(&j, l)| l[j].clone()).collect();
        let mut pos = lists.len();
        loop {
            if pos == 0 {
                done = true;
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
        Some(item)
    })
}
