//! Duals through the component table: `C_i` in `R_i + u R_i` determines
//! `D_{μ(i)}` in the ring on the other side, with `F = f_{μ(i)}`:
//!
//! | `C_i`                  | `D_{μ(i)}`                                   |
//! |------------------------|----------------------------------------------|
//! | `<f^l>`                | `<F^{ν-l}>`                                  |
//! | `<u f^m>`              | `<F^{ν-m}, u>`                               |
//! | III-a `(l, t, h)`      | `<F^{ν-l} + u F^{ν+t-2l} ĥ>`                 |
//! | III-b `(l, 0, h)`      | `<F^l + u ĥ>`                                |
//! | III-b `(l, t ≥ 1, h)`  | `<F^{l-t} + u ĥ, u F^{ν-l}>`                 |
//! | `<f^l, u f^m>`         | `<F^{ν-m}, u F^{ν-l}>`                       |
//! | V `(l, m, 0, h)`       | `<F^{ν-m} + u F^{ν-l-m} ĥ>`                  |
//! | V `(l, m, t ≥ 1, h)`   | `<F^{ν-m} + u F^{ν+t-l-m} ĥ, u F^{ν-l}>`     |
//!
//! where `ĥ = -δ_i^{t-l} x^{(l-t)d_i} h(x^{-1})`. The result is normalized.

use super::CodeSpec;
use crate::chainring::RingId;
use crate::crt::{Decomposition, PairElem};
use crate::error::Result;
use crate::ideals::{digits_to_elem, normalize_ideal, Digits, IdealSpec};
use crate::modring::Poly;

/// `-δ_i^{e} x^{(-e) d_i} μ_i(h)` in the target ring of `src`.
pub(crate) fn twist(dec: &Decomposition, src: RingId, h: &Digits, e: i64) -> Result<Poly> {
    let ctx = dec.ctx();
    let z = ctx.ring();
    let i = src.factor;
    let target = dec.ring(dec.mu_target(src));
    let delta = ctx.delta[i];
    let dpow = if e >= 0 {
        z.pow(delta, e as u64)
    } else {
        z.pow(z.inv(delta)?, e.unsigned_abs())
    };
    let h = digits_to_elem(dec.ring(src), h);
    let mh = dec.mu_i_map(src, &h);
    let xd = target.x_pow(-e * ctx.degree(i) as i64);
    Ok(target.neg(&target.scale(&target.mul(&xd, &mh), dpow)))
}

/// `D_{μ(i)}` for `C_i = spec` in ring `src`.
pub fn dual_component(dec: &Decomposition, src: RingId, spec: &IdealSpec) -> Result<IdealSpec> {
    let ctx = dec.ctx();
    let nu = ctx.nu();
    let tgt = dec.ring(dec.mu_target(src));
    let pi = |e: usize| tgt.pi_pow(e);
    let zero = tgt.zero();
    let one = tgt.one();
    let gens: Vec<PairElem> = match spec {
        IdealSpec::I { l } => return Ok(IdealSpec::I { l: nu - l }),
        IdealSpec::II { m } => vec![PairElem::new(pi(nu - m), zero), PairElem::new(tgt.zero(), one)],
        IdealSpec::IIIa { l, t, h } => {
            let hh = twist(dec, src, h, *t as i64 - *l as i64)?;
            vec![PairElem::new(pi(nu - l), tgt.mul(&pi(nu + t - 2 * l), &hh))]
        }
        IdealSpec::IIIb { l, t: 0, h } => {
            let hh = twist(dec, src, h, -(*l as i64))?;
            vec![PairElem::new(pi(*l), hh)]
        }
        IdealSpec::IIIb { l, t, h } => {
            let hh = twist(dec, src, h, *t as i64 - *l as i64)?;
            vec![PairElem::new(pi(l - t), hh), PairElem::new(zero, pi(nu - l))]
        }
        IdealSpec::IV { l, m } => vec![PairElem::new(pi(nu - m), zero.clone()), PairElem::new(zero, pi(nu - l))],
        IdealSpec::V { l, m, t: 0, h } => {
            let hh = twist(dec, src, h, -(*l as i64))?;
            vec![PairElem::new(pi(nu - m), tgt.mul(&pi(nu - l - m), &hh))]
        }
        IdealSpec::V { l, m, t, h } => {
            let hh = twist(dec, src, h, *t as i64 - *l as i64)?;
            vec![
                PairElem::new(pi(nu - m), tgt.mul(&pi(nu + t - l - m), &hh)),
                PairElem::new(zero, pi(nu - l)),
            ]
        }
    };
    normalize_ideal(&gens, tgt)
}

/// The dual code, living on the other side.
pub fn dual_code(dec: &Decomposition, code: &CodeSpec) -> Result<CodeSpec> {
    let ctx = dec.ctx();
    code.validate(ctx)?;
    let mut out = vec![IdealSpec::whole(); ctx.r()];
    for (i, c) in code.components.iter().enumerate() {
        let src = RingId { factor: i, variant: code.variant };
        out[ctx.mu[i]] = dual_component(dec, src, c)?;
    }
    Ok(CodeSpec::new(code.variant.other(), out))
}
