//! Idempotent decomposition of the ambient rings
//! `A = Z/p^s[x]/<x^N - (1+pw)>` and `Â = Z/p^s[x]/<x^N - (1+pŵ)>`
//! into the chain rings `R_i` (resp. `R̂_i`), and the `x ↦ x^{-1}` maps
//! between the two sides.

use std::fmt;

use crate::chainring::{ChainRing, RingId};
use crate::error::{Error, Result};
use crate::factorization::{Context, Variant};
use crate::modring::{fp_gcd_bezout, Poly, Zps};

/// The orthogonal idempotents `θ_i` of `A` and `θ̂_i` of `Â`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSet {
    pub plain: Vec<Poly>,
    pub hat: Vec<Poly>,
}

impl IdempotentSet {
    pub fn get(&self, v: Variant) -> &[Poly] {
        match v {
            Variant::Plain => &self.plain,
            Variant::Hat => &self.hat,
        }
    }
}

/// `a(y) F(y) + b(y) f(y) = 1` over `Z/p^s`, lifted from the `F_p` Bézout pair
/// by Newton steps.
pub fn lift_bezout(big: &Poly, f: &Poly) -> Result<(Poly, Poly)> {
    let z = f.ring();
    let field = z.residue_field();
    let (g, a, b) = fp_gcd_bezout(&big.change_ring(field), &f.change_ring(field));
    if !g.is_one() {
        return Err(Error::InternalInconsistency(
            "factor and cofactor share a root mod p".into(),
        ));
    }
    let (mut a, mut b) = (a.change_ring(z), b.change_ring(z));
    let one = Poly::one(z);
    for _ in 0..=2 * z.s() {
        let err = &one - &(&(&a * big) + &(&b * f));
        if err.is_zero() {
            return Ok((a, b));
        }
        let corr = &one + &err;
        a = &a * &corr;
        b = &b * &corr;
        // keep degrees small: move multiples of f from a into b
        let (q, r) = a.div_rem(f)?;
        a = r;
        b = &b + &(&q * big);
    }
    Err(Error::InternalInconsistency("Bézout lifting did not converge".into()))
}

fn theta_y(ctx: &Context, i: usize) -> Result<Poly> {
    let z = ctx.ring();
    let n = ctx.n as usize;
    let target = &Poly::monomial(z, 1, n) - &Poly::one(z);
    let big = target.div_rem(&ctx.factors[i])?.0;
    let (a, _) = lift_bezout(&big, &ctx.factors[i])?;
    Ok((&a * &big).rem_monic(&target))
}

/// Substitutes `y ↦ η^{-1} x^{p^k}` into a polynomial of degree `< n`.
fn substitute(ctx: &Context, t: &Poly, v: Variant) -> Poly {
    let z = ctx.ring();
    let eta_inv = z.inv(ctx.eta(v)).expect("η is a unit");
    let pk = ctx.pk();
    let mut coeffs = vec![0; ctx.len];
    for (j, &c) in t.coeffs().iter().enumerate() {
        coeffs[pk * j] = z.mul(c, z.pow(eta_inv, j as u64));
    }
    Poly::from_coeffs(z, coeffs)
}

pub fn compute_idempotents(ctx: &Context) -> Result<IdempotentSet> {
    let mut plain = Vec::new();
    let mut hat = Vec::new();
    for i in 0..ctx.r() {
        let t = theta_y(ctx, i)?;
        plain.push(substitute(ctx, &t, Variant::Plain));
        hat.push(substitute(ctx, &t, Variant::Hat));
    }
    let set = IdempotentSet { plain, hat };
    for v in [Variant::Plain, Variant::Hat] {
        check_idempotents(ctx, set.get(v), v)?;
    }
    Ok(set)
}

fn check_idempotents(ctx: &Context, th: &[Poly], v: Variant) -> Result<()> {
    let z = ctx.ring();
    let sum = th.iter().fold(Poly::zero(z), |acc, t| &acc + t);
    let bad = |what: &str| Err(Error::InternalInconsistency(format!("idempotents: {what}")));
    if !sum.is_one() {
        return bad("sum is not 1");
    }
    for (i, a) in th.iter().enumerate() {
        for (j, b) in th.iter().enumerate().skip(i) {
            let prod = ambient_mul(ctx, v, a, b);
            if (i == j && prod != *a) || (i != j && !prod.is_zero()) {
                return bad("not orthogonal idempotents");
            }
        }
    }
    Ok(())
}

/// Reduces modulo `x^N - γ` by folding high coefficients.
pub fn ambient_reduce(ctx: &Context, v: Variant, a: &Poly) -> Poly {
    let z = ctx.ring();
    let n = ctx.len;
    let g = ctx.gamma(v);
    let mut out = vec![0u64; n];
    for (j, &c) in a.change_ring(z).coeffs().iter().enumerate() {
        let wraps = (j / n) as u64;
        let c = if wraps == 0 { c } else { z.mul(c, z.pow(g, wraps)) };
        out[j % n] = z.add(out[j % n], c);
    }
    Poly::from_coeffs(z, out)
}

pub fn ambient_mul(ctx: &Context, v: Variant, a: &Poly, b: &Poly) -> Poly {
    ambient_reduce(ctx, v, &(a * b))
}

/// An element `ξ + u η` of `A + uA` (or `Â + uÂ`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientElem {
    pub variant: Variant,
    pub a: Poly,
    pub b: Poly,
}

impl fmt::Display for AmbientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + u({})", self.a, self.b)
    }
}

/// An element `a + u b` of a local piece `R_i + u R_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairElem {
    pub a: Poly,
    pub b: Poly,
}

impl PairElem {
    pub fn new(a: Poly, b: Poly) -> Self {
        PairElem { a, b }
    }

    pub fn zero(z: Zps) -> Self {
        PairElem::new(Poly::zero(z), Poly::zero(z))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Everything derived from a context: both families of chain rings and the
/// idempotents.
#[derive(Clone, Debug)]
pub struct Decomposition {
    ctx: Context,
    plain: Vec<ChainRing>,
    hat: Vec<ChainRing>,
    idem: IdempotentSet,
}

impl Decomposition {
    pub fn new(ctx: Context) -> Result<Self> {
        let plain = (0..ctx.r())
            .map(|i| ChainRing::new(&ctx, i, Variant::Plain))
            .collect::<Result<Vec<_>>>()?;
        let hat = (0..ctx.r())
            .map(|i| ChainRing::new(&ctx, i, Variant::Hat))
            .collect::<Result<Vec<_>>>()?;
        let idem = compute_idempotents(&ctx)?;
        Ok(Decomposition {
            ctx,
            plain,
            hat,
            idem,
        })
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn idempotents(&self) -> &IdempotentSet {
        &self.idem
    }

    pub fn theta(&self, v: Variant, i: usize) -> &Poly {
        &self.idem.get(v)[i]
    }

    pub fn ring(&self, id: RingId) -> &ChainRing {
        match id.variant {
            Variant::Plain => &self.plain[id.factor],
            Variant::Hat => &self.hat[id.factor],
        }
    }

    pub fn rings(&self, v: Variant) -> &[ChainRing] {
        match v {
            Variant::Plain => &self.plain,
            Variant::Hat => &self.hat,
        }
    }

    /// The ring `μ_i` lands in: factor `μ(i)` on the other side.
    pub fn mu_target(&self, id: RingId) -> RingId {
        RingId {
            factor: self.ctx.mu[id.factor],
            variant: id.variant.other(),
        }
    }

    pub fn ambient_zero(&self, v: Variant) -> AmbientElem {
        let z = self.ctx.ring();
        AmbientElem {
            variant: v,
            a: Poly::zero(z),
            b: Poly::zero(z),
        }
    }

    pub fn ambient(&self, v: Variant, a: &Poly, b: &Poly) -> AmbientElem {
        AmbientElem {
            variant: v,
            a: ambient_reduce(&self.ctx, v, a),
            b: ambient_reduce(&self.ctx, v, b),
        }
    }

    /// `(a + ub)(c + ud) = ac + u(ad + bc)`.
    pub fn ambient_mul(&self, x: &AmbientElem, y: &AmbientElem) -> Result<AmbientElem> {
        if x.variant != y.variant {
            return Err(Error::VariantMismatch);
        }
        let v = x.variant;
        let m = |p: &Poly, q: &Poly| ambient_mul(&self.ctx, v, p, q);
        Ok(AmbientElem {
            variant: v,
            a: m(&x.a, &y.a),
            b: &m(&x.a, &y.b) + &m(&x.b, &y.a),
        })
    }

    pub fn ambient_add(&self, x: &AmbientElem, y: &AmbientElem) -> Result<AmbientElem> {
        if x.variant != y.variant {
            return Err(Error::VariantMismatch);
        }
        Ok(AmbientElem {
            variant: x.variant,
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        })
    }

    /// `Σ θ_i (ξ_i + u η_i)`.
    pub fn tau_join(&self, v: Variant, parts: &[PairElem]) -> Result<AmbientElem> {
        if parts.len() != self.ctx.r() {
            return Err(Error::LengthMismatch(parts.len(), self.ctx.r()));
        }
        let z = self.ctx.ring();
        let mut a = Poly::zero(z);
        let mut b = Poly::zero(z);
        for (i, part) in parts.iter().enumerate() {
            let th = self.theta(v, i);
            a = &a + &ambient_mul(&self.ctx, v, th, &part.a);
            b = &b + &ambient_mul(&self.ctx, v, th, &part.b);
        }
        Ok(AmbientElem { variant: v, a, b })
    }

    /// Inverse of [`tau_join`](Self::tau_join): reduce modulo each defining polynomial.
    pub fn tau_split(&self, c: &AmbientElem) -> Vec<PairElem> {
        self.rings(c.variant)
            .iter()
            .map(|r| PairElem::new(r.reduce(&c.a), r.reduce(&c.b)))
            .collect()
    }

    /// `a(x) ↦ a(x^{-1})` from one ambient ring to the other, using
    /// `x^{-j} = γ' x^{N-j}` where `γ'` is the source shift constant's inverse
    /// on the target side, i.e. the source constant itself.
    pub fn mu_ambient_poly(&self, src: Variant, a: &Poly) -> Poly {
        let z = self.ctx.ring();
        let n = self.ctx.len;
        let g = self.ctx.gamma(src);
        let mut out = vec![0u64; n];
        for (j, &c) in a.coeffs().iter().enumerate() {
            if j == 0 {
                out[0] = c;
            } else {
                out[n - j] = z.mul(g, c);
            }
        }
        Poly::from_coeffs(z, out)
    }

    pub fn mu_ambient(&self, beta: &AmbientElem) -> AmbientElem {
        AmbientElem {
            variant: beta.variant.other(),
            a: self.mu_ambient_poly(beta.variant, &beta.a),
            b: self.mu_ambient_poly(beta.variant, &beta.b),
        }
    }

    /// `μ_i : R_i → R̂_{μ(i)}` (or back), `c(x) ↦ c(x^{-1})`.
    pub fn mu_i_map(&self, src: RingId, a: &Poly) -> Poly {
        let target = self.ring(self.mu_target(src));
        let xi = target.x_inv();
        let mut acc = target.zero();
        for &c in a.coeffs().iter().rev() {
            acc = &target.mul(&acc, xi) + &Poly::constant(target.base(), c);
        }
        acc
    }

    /// `μ_i` on a pair element.
    pub fn mu_i_pair(&self, src: RingId, e: &PairElem) -> PairElem {
        PairElem::new(self.mu_i_map(src, &e.a), self.mu_i_map(src, &e.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{Params, DEFAULT_SEED};

    fn fano() -> Decomposition {
        Decomposition::new(Context::new(Params::new(2, 3, 1, 7, 1), DEFAULT_SEED).unwrap()).unwrap()
    }

    #[test]
    fn fano_idempotents() {
        let dec = fano();
        let th: Vec<String> = dec.idempotents().plain.iter().map(|t| t.to_string()).collect();
        assert_eq!(th[0], "7,0,5,0,7,0,5,0,7,0,5,0,7");
        assert_eq!(th[1], "5,0,1,0,3,0,2,0,3,0,2,0,6");
        assert_eq!(th[2], "5,0,2,0,6,0,1,0,6,0,1,0,3");
    }

    #[test]
    fn single_factor_idempotent_is_one() {
        let dec = Decomposition::new(Context::new(Params::new(3, 2, 1, 1, 1), DEFAULT_SEED).unwrap()).unwrap();
        assert!(dec.idempotents().plain[0].is_one());
        assert!(dec.idempotents().hat[0].is_one());
    }

    #[test]
    fn join_of_ones_is_one() {
        let dec = fano();
        let z = dec.ctx().ring();
        let parts = vec![PairElem::new(Poly::one(z), Poly::zero(z)); 3];
        let c = dec.tau_join(Variant::Plain, &parts).unwrap();
        assert!(c.a.is_one() && c.b.is_zero());
    }

    #[test]
    fn mu_of_x() {
        let dec = fano();
        let z = dec.ctx().ring();
        let m = dec.mu_ambient_poly(Variant::Plain, &Poly::var(z));
        assert_eq!(m, Poly::monomial(z, 3, 13));
        assert!(dec.mu_ambient_poly(Variant::Plain, &Poly::one(z)).is_one());
    }

    #[test]
    fn mu_sends_theta_to_hat_theta() {
        let dec = fano();
        for i in 0..3 {
            let j = dec.ctx().mu[i];
            assert_eq!(dec.mu_ambient_poly(Variant::Plain, dec.theta(Variant::Plain, i)), *dec.theta(Variant::Hat, j));
            assert_eq!(dec.mu_ambient_poly(Variant::Hat, dec.theta(Variant::Hat, i)), *dec.theta(Variant::Plain, j));
        }
    }

    #[test]
    fn mu_of_pi_power() {
        let dec = fano();
        for i in 0..3 {
            let src = RingId { factor: i, variant: Variant::Plain };
            let tgt = dec.ring(dec.mu_target(src));
            let di = dec.ctx().degree(i) as i64;
            let delta = dec.ctx().delta[i];
            for l in 1..=dec.ctx().nu() {
                let lhs = dec.mu_i_map(src, &dec.ring(src).pi_pow(l));
                let rhs = tgt.mul(&tgt.x_pow(-(l as i64) * di), &tgt.pi_pow(l))
                    .scale(dec.ctx().ring().pow(delta, l as u64));
                assert_eq!(lhs, tgt.reduce(&rhs));
            }
        }
    }
}
