//! Factoring squarefree polynomials over `F_p`: distinct-degree splitting
//! followed by Cantor–Zassenhaus equal-degree splitting.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::modring::{fp_gcd_bezout, Poly};

/// Splits a monic squarefree `f` into `(product, degree)` blocks where each
/// product collects every irreducible factor of that degree.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.ring();
    let p = field.p();
    let y = Poly::var(field);
    let mut rest = f.clone();
    let mut h = y.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        h = h.pow_mod(p, &rest);
        let (g, _, _) = fp_gcd_bezout(&(&h - &y), &rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).expect("monic gcd").0;
            h = h.rem_monic(&rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic product of distinct irreducibles all of degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let deg = f.degree().expect("nonzero");
    if deg == d {
        return vec![f.clone()];
    }
    let field = f.ring();
    let p = field.p();
    loop {
        let a = Poly::from_coeffs(field, (0..deg).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if p == 2 {
            // trace from F_{2^d} down to F_2
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                term = term.mul_mod(&term, f);
                acc = &acc + &term;
            }
            acc
        } else {
            // norm to F_p, then the quadratic character
            let mut term = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                term = term.pow_mod(p, f);
                norm = norm.mul_mod(&term, f);
            }
            &norm.pow_mod((p - 1) / 2, f) - &Poly::one(field)
        };
        let (g, _, _) = fp_gcd_bezout(&probe, f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let other = f.div_rem(&g).expect("monic gcd").0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// All monic irreducible factors of a monic squarefree `f` over `F_p`, unordered.
pub fn factor_squarefree(f: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    distinct_degree(f)
        .into_iter()
        .flat_map(|(g, d)| equal_degree(&g, d, rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::{is_irreducible, Zps};
    use rand::SeedableRng;

    #[test]
    fn splits_cyclotomic_polynomials_completely() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(2u64, 7usize), (2, 15), (3, 8), (3, 13), (5, 12), (2, 21), (7, 9)] {
            let field = Zps::field(p);
            let f = &Poly::monomial(field, 1, n) - &Poly::one(field);
            let factors = factor_squarefree(&f, &mut rng);
            let prod = factors.iter().fold(Poly::one(field), |acc, g| &acc * g);
            assert_eq!(prod, f);
            assert!(factors.iter().all(is_irreducible));
        }
    }
}
