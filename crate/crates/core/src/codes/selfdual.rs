//! Self-dual codes when `(1 + 2w)^2 = 1`, so a code and its dual share
//! one ambient ring.
//!
//! Paired factors `i ≠ μ(i)` are free in one coordinate: `C_{μ(i)}` is
//! forced to be the dual component of `C_i`. A fixed factor `i = μ(i)`
//! admits exactly the ideals below, with `h = ν/2`:
//!
//! - `<f^h>`, or `<u>`;
//! - III-a `(h, t, h')` with `h' + δ^{t-h} x^{(h-t)d} h'(x^{-1}) ∈ <f^{h-t}>`;
//! - III-b `(l, 0, h')` with `l > h` and `h' + δ^{-l} x^{ld} h'(x^{-1}) ∈ <f^{ν-l}>`;
//! - `<f^l, u f^{ν-l}>` with `l > h`;
//! - V `(l, ν-l, t ≥ 1, h')` with `l > h` and
//!   `h' + δ^{t-l} x^{(l-t)d} h'(x^{-1}) ∈ <f^{ν-l-t}>`.

use num_bigint::BigUint;

use super::dual::{dual_component, twist};
use super::{product, CodeSpec};
use crate::chainring::RingId;
use crate::crt::Decomposition;
use crate::error::{Error, Result};
use crate::factorization::Variant;
use crate::ideals::{count_ideals, digits_to_elem, enumerate_ideals, Digits, IdealSpec};
use crate::par::Exec;

fn check_compatible(dec: &Decomposition) -> Result<()> {
    let ctx = dec.ctx();
    if ctx.p != 2 || !ctx.is_self_dual_compatible() {
        return Err(Error::NotSelfDualCompatible { p: ctx.p, s: ctx.s, w: ctx.w });
    }
    if ctx.eta(Variant::Plain) != ctx.eta(Variant::Hat) {
        return Err(Error::InternalInconsistency("the two ambient rings differ".into()));
    }
    Ok(())
}

/// `h + δ^e x^{-e d} h(x^{-1}) ∈ <f^m>` inside the fixed factor `i`.
fn symmetric(dec: &Decomposition, i: usize, h: &Digits, e: i64, m: usize) -> Result<bool> {
    let src = RingId { factor: i, variant: Variant::Plain };
    let ring = dec.ring(src);
    let sum = ring.sub(&digits_to_elem(ring, h), &twist(dec, src, h, e)?);
    Ok(ring.in_pi_power(&sum, m))
}

/// Whether `C_i = spec` is allowed at a fixed factor `i`.
pub fn fixed_block_condition(dec: &Decomposition, i: usize, spec: &IdealSpec) -> Result<bool> {
    check_compatible(dec)?;
    let ctx = dec.ctx();
    if ctx.mu[i] != i {
        return Err(Error::InvalidInput(format!("factor {} is not fixed by μ", i + 1)));
    }
    let nu = ctx.nu();
    let half = nu / 2;
    let signed = |a: usize, b: usize| a as i64 - b as i64;
    Ok(match spec {
        IdealSpec::I { l } => *l == half,
        IdealSpec::II { m } => *m == 0,
        IdealSpec::IIIa { l, t, h } => *l == half && symmetric(dec, i, h, signed(*t, *l), l - t)?,
        IdealSpec::IIIb { l, t: 0, h } => *l > half && symmetric(dec, i, h, -(*l as i64), nu - l)?,
        IdealSpec::IIIb { .. } => false,
        IdealSpec::IV { l, m } => *l > half && l + m == nu,
        IdealSpec::V { l, m, t, h } => {
            *t >= 1 && *l > half && l + m == nu && symmetric(dec, i, h, signed(*t, *l), nu - l - t)?
        }
    })
}

/// Every admissible `C_i` for a fixed factor `i`, in enumeration order.
pub fn fixed_block_candidates(dec: &Decomposition, i: usize, exec: Exec) -> Result<Vec<IdealSpec>> {
    check_compatible(dec)?;
    let ctx = dec.ctx();
    let all: Vec<IdealSpec> = enumerate_ideals(ctx.p, ctx.degree(i), ctx.nu()).collect();
    let keep = exec.map(all, |spec| fixed_block_condition(dec, i, &spec).map(|ok| ok.then_some(spec)));
    Ok(keep.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}

pub fn is_self_dual(dec: &Decomposition, code: &CodeSpec) -> Result<bool> {
    check_compatible(dec)?;
    let ctx = dec.ctx();
    code.validate(ctx)?;
    for (i, c) in code.components.iter().enumerate() {
        let j = ctx.mu[i];
        let ok = if j == i {
            fixed_block_condition(dec, i, c)?
        } else {
            let src = RingId { factor: i, variant: Variant::Plain };
            dual_component(dec, src, c)? == code.components[j]
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Choices per block: each entry assigns ideals to one or two factors.
fn block_choices(dec: &Decomposition, exec: Exec) -> Result<Vec<Vec<Vec<(usize, IdealSpec)>>>> {
    let ctx = dec.ctx();
    let mut blocks = Vec::new();
    for i in 0..ctx.r() {
        let j = ctx.mu[i];
        if j == i {
            let cands = fixed_block_candidates(dec, i, exec)?;
            blocks.push(cands.into_iter().map(|c| vec![(i, c)]).collect());
        } else if i < j {
            let src = RingId { factor: i, variant: Variant::Plain };
            let all: Vec<IdealSpec> = enumerate_ideals(ctx.p, ctx.degree(i), ctx.nu()).collect();
            let pairs = exec.map(all, |c| dual_component(dec, src, &c).map(|d| vec![(i, c), (j, d)]));
            blocks.push(pairs.into_iter().collect::<Result<Vec<_>>>()?);
        }
    }
    Ok(blocks)
}

/// Every self-dual code, blocks in factor order, first block varying slowest.
pub fn enumerate_self_dual(dec: &Decomposition, exec: Exec) -> Result<impl Iterator<Item = CodeSpec>> {
    let r = dec.ctx().r();
    let blocks = block_choices(dec, exec)?;
    Ok(product(blocks).map(move |choice| {
        let mut comps = vec![IdealSpec::whole(); r];
        for (i, c) in choice.into_iter().flatten() {
            comps[i] = c;
        }
        CodeSpec::new(Variant::Plain, comps)
    }))
}

/// Number of self-dual codes, from the fixed-block candidate lists and the
/// ideal counts of paired blocks.
pub fn count_self_dual(dec: &Decomposition, exec: Exec) -> Result<BigUint> {
    check_compatible(dec)?;
    let ctx = dec.ctx();
    let mut total = BigUint::from(1u8);
    for i in 0..ctx.r() {
        let j = ctx.mu[i];
        if j == i {
            total *= fixed_block_candidates(dec, i, exec)?.len();
        } else if i < j {
            total *= count_ideals(ctx.p, ctx.degree(i), ctx.nu());
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{Context, Params, DEFAULT_SEED};

    fn dec(p: u64, s: u32, k: u32, n: u64, w: u64) -> Decomposition {
        Decomposition::new(Context::new(Params::new(p, s, k, n, w), DEFAULT_SEED).unwrap()).unwrap()
    }

    #[test]
    fn fixed_candidates_for_length_fourteen() {
        let d = dec(2, 3, 1, 7, 1);
        let got: Vec<String> = fixed_block_candidates(&d, 0, Exec::Sequential)
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        let expected = [
            "I(l=3)",
            "II(m=0)",
            "III-a(l=3,t=1,h=1)",
            "III-a(l=3,t=1,h=1|1)",
            "III-a(l=3,t=2,h=1)",
            "III-b(l=4,t=0,h=1)",
            "III-b(l=4,t=0,h=1|1)",
            "III-b(l=5,t=0,h=1)",
            "IV(l=4,m=2)",
            "IV(l=5,m=1)",
            "V(l=4,m=2,t=1,h=1)",
        ];
        assert_eq!(got, expected);
        assert_eq!(count_self_dual(&d, Exec::Parallel).unwrap(), BigUint::from(11u32 * 917));
    }

    #[test]
    fn fixed_condition_matches_dual_fixed_point() {
        for d in [dec(2, 3, 1, 7, 1), dec(2, 2, 1, 1, 1), dec(2, 3, 1, 1, 3), dec(2, 2, 2, 1, 1), dec(2, 4, 1, 3, 7)] {
            let ctx = d.ctx();
            for i in (0..ctx.r()).filter(|&i| ctx.mu[i] == i) {
                let src = RingId { factor: i, variant: Variant::Plain };
                for spec in enumerate_ideals(ctx.p, ctx.degree(i), ctx.nu()) {
                    let by_table = dual_component(&d, src, &spec).unwrap() == spec;
                    assert_eq!(fixed_block_condition(&d, i, &spec).unwrap(), by_table, "{spec}");
                }
            }
        }
    }

    #[test]
    fn paired_block_forces_partner() {
        let d = dec(2, 3, 1, 7, 1);
        for l in 0..=6 {
            let src = RingId { factor: 1, variant: Variant::Plain };
            assert_eq!(dual_component(&d, src, &IdealSpec::I { l }).unwrap(), IdealSpec::I { l: 6 - l });
        }
        let codes: Vec<CodeSpec> = enumerate_self_dual(&d, Exec::Sequential).unwrap().take(50).collect();
        for c in &codes {
            assert!(is_self_dual(&d, c).unwrap());
        }
    }

    #[test]
    fn incompatible_parameters_are_rejected() {
        let d = dec(3, 2, 1, 2, 1);
        assert!(matches!(count_self_dual(&d, Exec::Sequential), Err(Error::NotSelfDualCompatible { .. })));
        let d = dec(2, 4, 1, 1, 1);
        assert!(matches!(
            is_self_dual(&d, &CodeSpec::new(Variant::Plain, vec![IdealSpec::whole()])),
            Err(Error::NotSelfDualCompatible { .. })
        ));
    }
}
