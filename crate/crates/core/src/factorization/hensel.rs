//! Quadratic Hensel lifting of a coprime factorization from `F_p` to `Z/p^s`.

use crate::modring::{fp_gcd_bezout, Poly, Zps};

/// Given monic `f` over `Z/p^s` and a coprime split `f = g * h (mod p)` with
/// `h` monic, returns the unique monic `(g*, h*)` with `f = g* h*` over `Z/p^s`
/// and `g* = g`, `h* = h` mod `p`.
pub fn lift_pair(f: &Poly, g: &Poly, h: &Poly) -> (Poly, Poly) {
    let target = f.ring();
    let field = target.residue_field();
    let (one, mut a, mut b) = fp_gcd_bezout(&g.change_ring(field), &h.change_ring(field));
    assert!(one.is_one(), "Hensel lifting needs coprime factors");
    let (mut g, mut h) = (g.change_ring(field), h.change_ring(field));
    let mut e = 1u32;
    while e < target.s() {
        let next = (2 * e).min(target.s());
        let ring = Zps::with_exponent(target.p(), next);
        let up = |x: &Poly| x.change_ring(ring);
        let (fr, gr, hr, ar, br) = (f.change_ring(ring), up(&g), up(&h), up(&a), up(&b));
        let err = &fr - &(&gr * &hr);
        let (q, r) = (&ar * &err).div_rem(&hr).expect("monic factor");
        let g2 = &(&gr + &(&br * &err)) + &(&q * &gr);
        let h2 = &hr + &r;
        let corr = &(&(&ar * &g2) + &(&br * &h2)) - &Poly::one(ring);
        let (c, d) = (&ar * &corr).div_rem(&h2).expect("monic factor");
        a = &ar - &d;
        b = &(&br - &(&br * &corr)) - &(&c * &g2);
        g = g2;
        h = h2;
        e = next;
    }
    (g.change_ring(target), h.change_ring(target))
}
