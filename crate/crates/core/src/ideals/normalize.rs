//! Canonical form of the ideal generated by arbitrary elements of `R_i + u R_i`.

use super::{elem_digits, IdealSpec};
use crate::chainring::ChainRing;
use crate::crt::PairElem;
use crate::error::{Error, Result};

/// Reduces a generating set to its [`IdealSpec`].
///
/// `l` is the least valuation among the `R_i`-parts. Eliminating the
/// `R_i`-part from all but one generator leaves the `u`-part of the ideal,
/// whose least valuation is `m`; the remaining generator, scaled to
/// `π^l + u α`, then fixes `t` and `h` from the digits of `α` below `π^m`.
pub fn normalize_ideal(gens: &[PairElem], ring: &ChainRing) -> Result<IdealSpec> {
    let nu = ring.nu();
    let gens: Vec<PairElem> = gens
        .iter()
        .map(|g| PairElem::new(ring.reduce(&g.a), ring.reduce(&g.b)))
        .collect();

    let vals: Vec<usize> = gens.iter().map(|g| ring.valuation(&g.a)).collect();
    let (l, pivot) = match vals.iter().enumerate().min_by_key(|(_, &v)| v) {
        Some((j, &v)) if v < nu => (v, j),
        _ => {
            let m = gens
                .iter()
                .map(|g| ring.valuation(&g.b))
                .min()
                .unwrap_or(nu);
            return Ok(if m == nu {
                IdealSpec::zero(nu)
            } else {
                IdealSpec::II { m }
            });
        }
    };

    let (_, u0) = ring.split_valuation(&gens[pivot].a);
    let u0_inv = ring.inverse(&u0)?;
    let b0 = &gens[pivot].b;

    // valuation of the u-part: generated by every a_j, every b_j - c_j b_0,
    // and π^{ν-l} b_0
    let mut m = ring.valuation(&ring.mul(&ring.pi_pow(nu - l), b0));
    for (j, g) in gens.iter().enumerate() {
        m = m.min(vals[j]);
        if j == pivot {
            continue;
        }
        let (vj, uj) = ring.split_valuation(&g.a);
        let c = if vj >= nu {
            ring.zero()
        } else {
            ring.mul(&ring.pi_pow(vj - l), &ring.mul(&uj, &u0_inv))
        };
        m = m.min(ring.valuation(&ring.sub(&g.b, &ring.mul(&c, b0))));
    }

    let alpha = ring.mul(b0, &u0_inv);
    let va = ring.valuation(&alpha);
    if l == 0 {
        return Ok(IdealSpec::whole());
    }
    if m == l {
        if va >= l {
            return Ok(IdealSpec::I { l });
        }
        let h = elem_digits(ring, &alpha, va, l - va);
        return Ok(IdealSpec::IIIa { l, t: va, h });
    }
    debug_assert!(m < l);
    if va >= m {
        return Ok(IdealSpec::IV { l, m });
    }
    let t = va;
    let h = elem_digits(ring, &alpha, t, m - t);
    if l + m == nu + t {
        Ok(IdealSpec::IIIb { l, t, h })
    } else if l + m < nu + t {
        Ok(IdealSpec::V { l, m, t, h })
    } else {
        Err(Error::NotAnIdealForm(format!(
            "inconsistent invariants l={l}, m={m}, t={t}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crt::Decomposition;
    use crate::factorization::{Context, Params, Variant, DEFAULT_SEED};
    use crate::ideals::enumerate_ideals;

    fn dec(p: u64, s: u32, k: u32, n: u64, w: u64) -> Decomposition {
        Decomposition::new(Context::new(Params::new(p, s, k, n, w), DEFAULT_SEED).unwrap()).unwrap()
    }

    #[test]
    fn every_enumerated_spec_normalizes_to_itself() {
        for (d, i) in [(dec(2, 3, 1, 7, 1), 0), (dec(2, 3, 1, 7, 1), 1), (dec(3, 2, 1, 2, 1), 0), (dec(2, 2, 1, 1, 1), 0)] {
            let ring = &dec_ring(&d, i);
            let p = ring.base().p();
            for spec in enumerate_ideals(p, ring.residue_degree(), ring.nu()) {
                let gens = spec.generators(ring).unwrap();
                assert_eq!(normalize_ideal(&gens, ring).unwrap(), spec);
            }
        }
    }

    fn dec_ring(d: &Decomposition, i: usize) -> crate::chainring::ChainRing {
        d.rings(Variant::Plain)[i].clone()
    }

    #[test]
    fn unit_rescaled_generator_gives_same_spec() {
        let d = dec(2, 3, 1, 7, 1);
        let ring = dec_ring(&d, 1);
        let spec = IdealSpec::IIIa { l: 3, t: 1, h: vec![vec![1], vec![]] };
        let g = &spec.generators(&ring).unwrap()[0];
        let unit = ring.reduce(&crate::modring::Poly::from_coeffs(ring.base(), vec![3, 1]));
        assert!(ring.is_unit(&unit));
        let scaled = PairElem::new(ring.mul(&g.a, &unit), ring.mul(&g.b, &unit));
        // adding a multiple of u π^3 must not change the ideal either
        let junk = ring.mul(&ring.pi_pow(3), &unit);
        let shifted = PairElem::new(scaled.a.clone(), ring.add(&scaled.b, &junk));
        assert_eq!(normalize_ideal(&[shifted], &ring).unwrap(), spec);
    }

    #[test]
    fn redundant_generators_collapse() {
        let d = dec(2, 2, 1, 1, 1);
        let ring = dec_ring(&d, 0);
        let gens = vec![
            PairElem::new(ring.pi_pow(2), ring.zero()),
            PairElem::new(ring.pi_pow(3), ring.pi_pow(1)),
            PairElem::new(ring.zero(), ring.pi_pow(3)),
        ];
        // (π^3 + uπ) - π(π^2) = uπ, so the ideal is <π^2, uπ>
        assert_eq!(normalize_ideal(&gens, &ring).unwrap(), IdealSpec::IV { l: 2, m: 1 });
        assert_eq!(normalize_ideal(&[], &ring).unwrap(), IdealSpec::zero(4));
    }
}
