#![allow(dead_code)]

use std::sync::OnceLock;

use chainring::chainring::RingId;
use chainring::codes::{code_cardinality, dual_code, is_constacyclic, materialize, CodeSpec};
use chainring::crt::{ambient_mul, AmbientElem, Decomposition, PairElem};
use chainring::factorization::{Context, Params, Variant, DEFAULT_SEED};
use chainring::ideals::{enumerate_ideals, IdealSpec};
use chainring::modring::Poly;
use num_bigint::BigUint;

pub struct Fixture {
    pub dec: Decomposition,
    /// Every ideal of every factor, in enumeration order.
    pub ideals: Vec<Vec<IdealSpec>>,
}

impl Fixture {
    pub fn new(p: u64, s: u32, k: u32, n: u64, w: u64) -> Self {
        let dec = Decomposition::new(Context::new(Params::new(p, s, k, n, w), DEFAULT_SEED).unwrap()).unwrap();
        let ctx = dec.ctx();
        let ideals = (0..ctx.r())
            .map(|i| enumerate_ideals(ctx.p, ctx.degree(i), ctx.nu()).collect())
            .collect();
        Fixture { dec, ideals }
    }

    pub fn ctx(&self) -> &Context {
        self.dec.ctx()
    }

    /// Ambient element from arbitrary coefficients.
    pub fn ambient(&self, v: Variant, a: &[u64], b: &[u64]) -> AmbientElem {
        let z = self.ctx().ring();
        let n = self.ctx().len;
        let poly = |c: &[u64]| Poly::from_coeffs(z, c.iter().take(n).map(|&x| x % z.modulus()).collect());
        self.dec.ambient(v, &poly(a), &poly(b))
    }

    /// The code picking ideal `seeds[i] mod N_i` at factor `i`.
    pub fn code(&self, v: Variant, seeds: &[u64]) -> CodeSpec {
        let comps = self
            .ideals
            .iter()
            .enumerate()
            .map(|(i, list)| list[(seeds[i % seeds.len()] % list.len() as u64) as usize].clone())
            .collect();
        CodeSpec::new(v, comps)
    }
}

/// Contexts for the algebraic identities: several primes, both kinds of
/// factor pairing, and `k = 2`.
pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            Fixture::new(2, 3, 1, 7, 1),
            Fixture::new(3, 2, 1, 2, 1),
            Fixture::new(2, 2, 1, 3, 1),
            Fixture::new(5, 2, 1, 2, 3),
            Fixture::new(2, 2, 2, 1, 1),
            Fixture::new(3, 3, 1, 4, 2),
        ]
    })
}

/// Contexts small enough to materialize codes in.
pub fn small_fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            Fixture::new(2, 2, 1, 1, 1),
            Fixture::new(2, 3, 1, 1, 1),
            Fixture::new(2, 2, 2, 1, 1),
            Fixture::new(3, 2, 1, 1, 1),
            Fixture::new(2, 2, 1, 3, 1),
        ]
    })
}

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn variant(flag: bool) -> Variant {
    if flag {
        Variant::Hat
    } else {
        Variant::Plain
    }
}

/// `Σ θ_i a = a` and `θ_i θ_j a = [i = j] θ_i a`.
pub fn idempotent_identities(f: &Fixture, hat: bool, a: &[u64]) -> Check {
    let ctx = f.ctx();
    let v = variant(hat);
    let a = f.ambient(v, a, &[]).a;
    let th = f.dec.idempotents().get(v);
    let parts: Vec<Poly> = th.iter().map(|t| ambient_mul(ctx, v, t, &a)).collect();
    let sum = parts.iter().fold(Poly::zero(ctx.ring()), |acc, p| &acc + p);
    ensure(sum == a, || "θ_i a do not sum to a".into())?;
    for (i, ti) in th.iter().enumerate() {
        for (j, pj) in parts.iter().enumerate() {
            let prod = ambient_mul(ctx, v, ti, pj);
            let want = if i == j { pj.clone() } else { Poly::zero(ctx.ring()) };
            ensure(prod == want, || format!("θ_{} θ_{} a", i + 1, j + 1))?;
        }
    }
    Ok(())
}

/// Splitting then joining is the identity, and so is joining then splitting.
pub fn tau_roundtrip(f: &Fixture, hat: bool, a: &[u64], b: &[u64]) -> Check {
    let v = variant(hat);
    let c = f.ambient(v, a, b);
    let parts = f.dec.tau_split(&c);
    ensure(f.dec.tau_join(v, &parts).unwrap() == c, || "join(split(c)) != c".into())?;
    let again = f.dec.tau_split(&f.dec.tau_join(v, &parts).unwrap());
    ensure(again == parts, || "split(join(parts)) != parts".into())
}

/// `μ` is additive, multiplicative and an involution on the ambient rings,
/// and each `μ_i` is a ring map with `μ_{μ(i)} ∘ μ_i = id`.
pub fn mu_isomorphism(f: &Fixture, hat: bool, a: &[u64], b: &[u64]) -> Check {
    let dec = &f.dec;
    let v = variant(hat);
    let x = f.ambient(v, a, b);
    let y = f.ambient(v, b, a);
    let mx = dec.mu_ambient(&x);
    let my = dec.mu_ambient(&y);
    ensure(dec.mu_ambient(&mx) == x, || "μ(μ(x)) != x".into())?;
    ensure(
        dec.mu_ambient(&dec.ambient_mul(&x, &y).unwrap()) == dec.ambient_mul(&mx, &my).unwrap(),
        || "μ(xy) != μ(x)μ(y)".into(),
    )?;
    ensure(
        dec.mu_ambient(&dec.ambient_add(&x, &y).unwrap()) == dec.ambient_add(&mx, &my).unwrap(),
        || "μ(x+y) != μ(x)+μ(y)".into(),
    )?;
    for i in 0..f.ctx().r() {
        let src = RingId { factor: i, variant: v };
        let ring = dec.ring(src);
        let tgt = dec.ring(dec.mu_target(src));
        let (p, q) = (ring.reduce(&x.a), ring.reduce(&x.b));
        let (mp, mq) = (dec.mu_i_map(src, &p), dec.mu_i_map(src, &q));
        ensure(dec.mu_i_map(src, &ring.mul(&p, &q)) == tgt.mul(&mp, &mq), || format!("μ_{} not multiplicative", i + 1))?;
        ensure(dec.mu_i_map(dec.mu_target(src), &mp) == p, || format!("μ_{} not inverted", i + 1))?;
        // μ on the ambient ring is compatible with μ_i on components
        ensure(tgt.reduce(&mx.a) == mp, || format!("μ and μ_{} disagree", i + 1))?;
    }
    Ok(())
}

/// `μ(θ_i) = θ̂_{μ(i)}` in both directions.
pub fn mu_theta(f: &Fixture) -> Check {
    let dec = &f.dec;
    for v in [Variant::Plain, Variant::Hat] {
        for i in 0..f.ctx().r() {
            let j = f.ctx().mu[i];
            ensure(
                dec.mu_ambient_poly(v, dec.theta(v, i)) == *dec.theta(v.other(), j),
                || format!("μ(θ_{}) != θ_{}", i + 1, j + 1),
            )?;
        }
    }
    Ok(())
}

/// `μ_i(f_i^l) = δ_i^l x^{-l d_i} f_{μ(i)}^l`.
pub fn pi_power_identity(f: &Fixture, hat: bool, i: usize, l: usize) -> Check {
    let dec = &f.dec;
    let ctx = f.ctx();
    let i = i % ctx.r();
    let l = l % (ctx.nu() + 1);
    let src = RingId { factor: i, variant: variant(hat) };
    let tgt = dec.ring(dec.mu_target(src));
    let lhs = dec.mu_i_map(src, &dec.ring(src).pi_pow(l));
    let d = ctx.degree(i) as i64;
    let rhs = tgt
        .mul(&tgt.x_pow(-(l as i64) * d), &tgt.pi_pow(l))
        .scale(ctx.ring().pow(ctx.delta[i], l as u64));
    ensure(lhs == tgt.reduce(&rhs), || format!("factor {} l = {l}", i + 1))
}

/// `p ϑ = f^{p^k}` with `ϑ` a unit, for every factor of both variants.
pub fn theta_units(f: &Fixture) -> Check {
    for v in [Variant::Plain, Variant::Hat] {
        for ring in f.dec.rings(v) {
            ring.theta_unit_check().map_err(|e| format!("{}: {e}", ring.id()))?;
        }
    }
    Ok(())
}

/// Digits rebuild the element, and the valuation is the first nonzero digit.
pub fn digit_roundtrip(f: &Fixture, hat: bool, i: usize, a: &[u64]) -> Check {
    let ctx = f.ctx();
    let ring = &f.dec.rings(variant(hat))[i % ctx.r()];
    let z = ring.base();
    let a = ring.reduce(&Poly::from_coeffs(z, a.iter().take(ring.dim()).map(|&x| x % z.modulus()).collect()));
    let digits = ring.digits(&a);
    ensure(digits.len() == ring.nu(), || "wrong digit count".into())?;
    ensure(ring.from_digits(&digits) == a, || format!("digits of {a} do not rebuild it"))?;
    let v = digits.iter().position(|d| !d.is_zero()).unwrap_or(ring.nu());
    ensure(ring.valuation(&a) == v, || format!("valuation of {a}"))?;
    let index = ring.index_of(&a);
    ensure(ring.element_at(index) == a, || format!("index round trip of {a}"))
}

/// `|C| |C^⊥| = p^{2sN}` and the dual of the dual is `C`.
pub fn dual_size(f: &Fixture, hat: bool, seeds: &[u64]) -> Check {
    let ctx = f.ctx();
    let code = f.code(variant(hat), seeds);
    let dual = dual_code(&f.dec, &code).map_err(|e| e.to_string())?;
    let total = BigUint::from(ctx.p).pow(2 * ctx.s * ctx.len as u32);
    ensure(code_cardinality(ctx, &code) * code_cardinality(ctx, &dual) == total, || format!("sizes of {code}"))?;
    ensure(dual_code(&f.dec, &dual).unwrap() == code, || format!("double dual of {code}"))
}

/// Materialized codes have the predicted size and are constacyclic.
pub fn materialized_constacyclic(f: &Fixture, seeds: &[u64], cap: u64) -> Check {
    let ctx = f.ctx();
    let code = f.code(Variant::Plain, seeds);
    if code_cardinality(ctx, &code) > BigUint::from(cap) {
        return Ok(());
    }
    let set = materialize(&f.dec, &code, cap).map_err(|e| e.to_string())?;
    ensure(BigUint::from(set.len()) == code_cardinality(ctx, &code), || format!("size of {code}"))?;
    let gamma = (ctx.gamma(Variant::Plain), 0);
    ensure(is_constacyclic(ctx.ring(), ctx.len, &set, gamma), || format!("{code} not constacyclic"))
}

/// Some element of `R_i + u R_i` from raw coefficients.
pub fn pair(f: &Fixture, i: usize, a: &[u64], b: &[u64]) -> PairElem {
    let ring = &f.dec.rings(Variant::Plain)[i];
    let z = ring.base();
    let poly = |c: &[u64]| ring.reduce(&Poly::from_coeffs(z, c.iter().map(|&x| x % z.modulus()).collect()));
    PairElem::new(poly(a), poly(b))
}
