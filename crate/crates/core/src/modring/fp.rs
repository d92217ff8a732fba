//! Euclid and irreducibility over `F_p`.

use super::{is_prime, Poly};

/// Extended Euclid over `F_p`: returns `(g, u, v)` with `g` monic and
/// `u*a + v*b = g`. Both inputs zero yields three zeros.
pub fn fp_gcd_bezout(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let f = a.ring();
    assert!(f.is_field(), "gcd is only defined over F_p here");
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
    let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor over a field");
        let u2 = &u0 - &(&q * &u1);
        let v2 = &v0 - &(&q * &v1);
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, u2);
        (v0, v1) = (v1, v2);
    }
    if r0.is_zero() {
        return (r0, Poly::zero(f), Poly::zero(f));
    }
    let inv = f.inv(r0.lead()).expect("field element");
    (r0.scale(inv), u0.scale(inv), v0.scale(inv))
}

/// Rabin's test: `f` of degree `d` is irreducible over `F_p` iff
/// `y^{p^d} = y mod f` and `gcd(y^{p^{d/q}} - y, f) = 1` for every prime `q | d`.
pub fn is_irreducible(f: &Poly) -> bool {
    let field = f.ring();
    assert!(field.is_field());
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let f = f.monic().expect("nonzero over a field");
    let y = Poly::var(field);
    let frob = |k: usize| {
        let mut t = y.rem_monic(&f);
        for _ in 0..k {
            t = t.pow_mod(field.p(), &f);
        }
        t
    };
    if &frob(d) - &y.rem_monic(&f) != Poly::zero(field) {
        return false;
    }
    (2..=d)
        .filter(|&q| d % q == 0 && is_prime(q as u64))
        .all(|q| {
            let h = &frob(d / q) - &y;
            fp_gcd_bezout(&h, &f).0.is_one()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::Zps;

    fn f2() -> Zps {
        Zps::field(2)
    }

    #[test]
    fn coprime_pair_from_fano_factors() {
        let a = Poly::parse(f2(), "1,1").unwrap();
        let b = Poly::parse(f2(), "1,1,1").unwrap();
        let (g, u, v) = fp_gcd_bezout(&a, &b);
        assert!(g.is_one());
        assert_eq!(u, Poly::var(f2()));
        assert!(v.is_one());
        // expand u*a + v*b by hand-free multiplication
        assert!((&(&u * &a) + &(&v * &b)).is_one());
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let f3 = Zps::field(3);
        let a = Poly::parse(f3, "1,0,2").unwrap();
        let (g, u, v) = fp_gcd_bezout(&a, &Poly::zero(f3));
        assert_eq!(g.to_string(), "2,0,1");
        assert_eq!(u, Poly::constant(f3, 2));
        assert!(v.is_zero());
        let (g, _, _) = fp_gcd_bezout(&a, &a);
        assert_eq!(g.to_string(), "2,0,1");
    }

    #[test]
    fn irreducibility_over_f2() {
        assert!(is_irreducible(&Poly::parse(f2(), "1,1,0,1").unwrap()));
        assert!(is_irreducible(&Poly::parse(f2(), "1,0,1,1").unwrap()));
        assert!(!is_irreducible(&Poly::parse(f2(), "1,0,1").unwrap()));
        assert!(!is_irreducible(&Poly::parse(f2(), "1,0,0,0,0,0,0,1").unwrap()));
        assert!(is_irreducible(&Poly::parse(f2(), "1,1,1").unwrap()));
        // (y^2+y+1)^2 has no roots but is reducible
        assert!(!is_irreducible(&Poly::parse(f2(), "1,0,1,0,1").unwrap()));
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_3 is (81 - 9)/4 = 18
        let f3 = Zps::field(3);
        let mut count = 0;
        for code in 0..81u64 {
            let mut c: Vec<u64> = (0..4).map(|i| code / 3u64.pow(i) % 3).collect();
            c.push(1);
            if is_irreducible(&Poly::from_coeffs(f3, c)) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }
}
