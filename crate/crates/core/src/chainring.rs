//! The local pieces `R_i = Z/p^s[x] / <η^d f_i(η^{-1} x^{p^k})>` of the
//! ambient ring, where `η = 1 + p w_0` (or `1 + p ŵ_0` for the hat variant).
//!
//! Each `R_i` is a finite chain ring with maximal ideal generated by
//! `π = f_i(x)`, nilpotency index `ν = p^k s` and residue field
//! `F_p[x]/<f̄_i>`. Elements are kept as reduced representatives of degree
//! below `D = p^k d_i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::factorization::{Context, Variant};
use crate::modring::{fp_gcd_bezout, Poly, SmithSolver, Zps};

/// Names one of the `2r` chain rings of a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingId {
    /// 0-based factor index.
    pub factor: usize,
    pub variant: Variant,
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Plain => write!(f, "R[{}]", self.factor + 1),
            Variant::Hat => write!(f, "Rhat[{}]", self.factor + 1),
        }
    }
}

/// An element tagged with the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainElem {
    pub ring: RingId,
    pub rep: Poly,
}

impl fmt::Display for ChainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.ring, self.rep)
    }
}

#[derive(Clone, Debug)]
pub struct ChainRing {
    id: RingId,
    zps: Zps,
    d: usize,
    pk: usize,
    nu: usize,
    modulus: Poly,
    fbar: Poly,
    pi_pows: Vec<Poly>,
    pi_solver: SmithSolver,
    x_inv: Poly,
    theta: Poly,
}

impl ChainRing {
    pub fn new(ctx: &Context, factor: usize, variant: Variant) -> Result<Self> {
        let zps = ctx.ring();
        let f = &ctx.factors[factor];
        let d = ctx.degree(factor);
        let pk = ctx.pk();
        let eta = ctx.eta(variant);
        let modulus = defining_poly(f, eta, pk);
        let dim = pk * d;

        let mut pi_pows = vec![Poly::one(zps)];
        let pi = f.rem_monic(&modulus);
        for _ in 0..ctx.nu() {
            let next = pi_pows.last().unwrap().mul_mod(&pi, &modulus);
            pi_pows.push(next);
        }
        let matrix: Vec<Vec<u64>> = {
            let cols: Vec<Vec<u64>> = (0..dim)
                .map(|j| pi.shift(j).rem_monic(&modulus).padded(dim))
                .collect();
            (0..dim).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
        };
        let mut ring = ChainRing {
            id: RingId { factor, variant },
            zps,
            d,
            pk,
            nu: ctx.nu(),
            modulus,
            fbar: f.reduce_mod_p(),
            pi_pows,
            pi_solver: SmithSolver::new(zps, &matrix),
            x_inv: Poly::zero(zps),
            theta: Poly::zero(zps),
        };
        if !ring.pi_pows[ring.nu].is_zero() || ring.pi_pows[ring.nu - 1].is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "{} does not have nilpotency index {}",
                ring.id, ring.nu
            )));
        }
        ring.x_inv = ring.inverse(&ring.x())?;
        ring.theta = ring.compute_theta(f)?;
        Ok(ring)
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn base(&self) -> Zps {
        self.zps
    }

    /// Degree `d_i` of the residue field over `F_p`.
    pub fn residue_degree(&self) -> usize {
        self.d
    }

    /// `D = p^k d_i`, the rank over `Z/p^s`.
    pub fn dim(&self) -> usize {
        self.pk * self.d
    }

    /// Nilpotency index `ν = p^k s` of `π`.
    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn pk(&self) -> usize {
        self.pk
    }

    /// The monic defining polynomial of degree `D`.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `f̄_i` over `F_p`.
    pub fn residue_modulus(&self) -> &Poly {
        &self.fbar
    }

    /// Number of elements, as `log_p |R_i| = D s`.
    pub fn log_p_size(&self) -> usize {
        self.dim() * self.zps.s() as usize
    }

    pub fn elem(&self, rep: Poly) -> ChainElem {
        ChainElem {
            ring: self.id,
            rep: self.reduce(&rep),
        }
    }

    fn check(&self, a: &ChainElem) -> Result<()> {
        if a.ring == self.id {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.change_ring(self.zps).rem_monic(&self.modulus)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.zps)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.zps)
    }

    pub fn x(&self) -> Poly {
        Poly::var(self.zps).rem_monic(&self.modulus)
    }

    pub fn x_inv(&self) -> &Poly {
        &self.x_inv
    }

    /// `x^e` for any integer `e`, negative powers via the stored inverse.
    pub fn x_pow(&self, e: i64) -> Poly {
        if e >= 0 {
            self.x().pow_mod(e as u64, &self.modulus)
        } else {
            self.x_inv.pow_mod(e.unsigned_abs(), &self.modulus)
        }
    }

    pub fn pi(&self) -> &Poly {
        &self.pi_pows[1]
    }

    /// `π^l`, zero for `l ≥ ν`.
    pub fn pi_pow(&self, l: usize) -> Poly {
        self.pi_pows
            .get(l)
            .cloned()
            .unwrap_or_else(|| self.zero())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        -a
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn scale(&self, a: &Poly, c: u64) -> Poly {
        a.scale(c)
    }

    pub fn pow(&self, a: &Poly, e: u64) -> Poly {
        a.pow_mod(e, &self.modulus)
    }

    pub fn mul_elem(&self, a: &ChainElem, b: &ChainElem) -> Result<ChainElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.elem(self.mul(&a.rep, &b.rep)))
    }

    pub fn add_elem(&self, a: &ChainElem, b: &ChainElem) -> Result<ChainElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.elem(self.add(&a.rep, &b.rep)))
    }

    /// Residue-field image: reduce mod `p`, then mod `f̄_i`.
    pub fn residue(&self, a: &Poly) -> Poly {
        a.reduce_mod_p().rem_monic(&self.fbar)
    }

    /// Embeds an `F_p` polynomial through the integer representatives `0..p`.
    pub fn lift(&self, digit: &Poly) -> Poly {
        digit.change_ring(self.zps)
    }

    /// `a / π` for `a ∈ <π>`; the result is determined modulo `ann(π) = <π^{ν-1}>`.
    pub fn div_pi(&self, a: &Poly) -> Result<Poly> {
        let q = self.pi_solver.solve(&a.padded(self.dim()))?;
        Ok(Poly::from_coeffs(self.zps, q))
    }

    /// The `ν` digits `b_j ∈ F_p[x]` (degree `< d_i`) with `a = Σ b_j π^j`.
    pub fn digits(&self, a: &Poly) -> Vec<Poly> {
        let mut rest = self.reduce(a);
        let mut out = Vec::with_capacity(self.nu);
        for j in 0..self.nu {
            let b = self.residue(&rest);
            out.push(b.clone());
            if j + 1 == self.nu {
                break;
            }
            rest = &rest - &self.lift(&b);
            if rest.is_zero() {
                out.resize(self.nu, Poly::zero(self.zps.residue_field()));
                break;
            }
            rest = self.div_pi(&rest).expect("element of the maximal ideal");
        }
        out
    }

    /// `Σ lift(b_j) π^j`.
    pub fn from_digits(&self, digits: &[Poly]) -> Poly {
        digits
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .fold(self.zero(), |acc, (j, b)| {
                &acc + &self.mul(&self.lift(b), &self.pi_pow(j))
            })
    }

    /// Index of the first nonzero digit, `ν` for zero.
    pub fn valuation(&self, a: &Poly) -> usize {
        let mut rest = self.reduce(a);
        for j in 0..self.nu {
            if rest.is_zero() {
                return self.nu;
            }
            let b = self.residue(&rest);
            if !b.is_zero() {
                return j;
            }
            rest = self.div_pi(&rest).expect("element of the maximal ideal");
        }
        self.nu
    }

    /// Writes `a = π^v u` with `u` a unit; `u` is built from the shifted
    /// digits, and is `1` when `a = 0`.
    pub fn split_valuation(&self, a: &Poly) -> (usize, Poly) {
        let digits = self.digits(a);
        match digits.iter().position(|b| !b.is_zero()) {
            None => (self.nu, self.one()),
            Some(v) => (v, self.from_digits(&digits[v..])),
        }
    }

    pub fn is_unit(&self, a: &Poly) -> bool {
        !self.residue(a).is_zero()
    }

    /// True iff `a ∈ <π^m>`.
    pub fn in_pi_power(&self, a: &Poly, m: usize) -> bool {
        m == 0 || self.valuation(a) >= m
    }

    pub fn inverse(&self, a: &Poly) -> Result<Poly> {
        let a = self.reduce(a);
        let res = self.residue(&a);
        if res.is_zero() {
            return Err(Error::NotAUnit {
                value: a.coeff(0),
                modulus: self.zps.modulus(),
            });
        }
        let (g, u, _) = fp_gcd_bezout(&res, &self.fbar);
        debug_assert!(g.is_one());
        let mut b = self.lift(&u);
        let two = Poly::constant(self.zps, 2);
        loop {
            let ab = self.mul(&a, &b);
            if ab.is_one() {
                return Ok(b);
            }
            b = self.mul(&b, &(&two - &ab));
        }
    }

    pub fn inverse_elem(&self, a: &ChainElem) -> Result<ChainElem> {
        self.check(a)?;
        Ok(self.elem(self.inverse(&a.rep)?))
    }

    /// The unit `ϑ` with `π^{p^k} = p ϑ`.
    pub fn theta_unit(&self) -> &Poly {
        &self.theta
    }

    fn compute_theta(&self, f: &Poly) -> Result<Poly> {
        let wide = self.zps.resized(self.zps.s() + 1);
        let p = self.zps.p();
        let fw = f.change_ring(wide);
        let diff = &fw.pow(self.pk as u32) - &self.modulus.change_ring(wide);
        if diff.coeffs().iter().any(|c| c % p != 0) {
            return Err(Error::InternalInconsistency(
                "f^{p^k} and the defining polynomial differ mod p".into(),
            ));
        }
        let theta = self.reduce(&Poly::from_coeffs(
            self.zps,
            diff.coeffs().iter().map(|c| c / p).collect(),
        ));
        if theta.scale(p) != self.pi_pow(self.pk) {
            return Err(Error::InternalInconsistency(
                "p * theta differs from pi^{p^k}".into(),
            ));
        }
        if !self.is_unit(&theta) {
            return Err(Error::InternalInconsistency("theta is not a unit".into()));
        }
        Ok(theta)
    }

    /// Rechecks `p ϑ = π^{p^k}` and that `ϑ` is a unit.
    pub fn theta_unit_check(&self) -> Result<Poly> {
        let theta = &self.theta;
        if theta.scale(self.zps.p()) != self.pi_pow(self.pk) || !self.is_unit(theta) {
            return Err(Error::InternalInconsistency("theta check failed".into()));
        }
        Ok(theta.clone())
    }

    /// `|Δ_l| = (p^d - 1) p^{(l-1) d}`.
    pub fn delta_size(&self, l: usize) -> u64 {
        let pd = self.zps.p().pow(self.d as u32);
        (pd - 1) * pd.pow(l.saturating_sub(1) as u32)
    }

    /// Digit sequences of the units of `R_i / <π^l>`, see [`delta_digits`].
    pub fn enum_delta_digits(&self, l: usize) -> Result<impl Iterator<Item = Vec<Poly>>> {
        if l == 0 || l > self.nu {
            return Err(Error::InvalidRange(format!(
                "Δ_l needs 1 ≤ l ≤ {}, got {l}",
                self.nu
            )));
        }
        let field = self.zps.residue_field();
        Ok(delta_digits(self.zps.p(), self.d, l)
            .map(move |dg| dg.into_iter().map(|c| Poly::from_coeffs(field, c)).collect()))
    }

    /// Elements of `Δ_l`.
    pub fn enum_delta(&self, l: usize) -> Result<impl Iterator<Item = ChainElem> + '_> {
        Ok(self
            .enum_delta_digits(l)?
            .map(move |dg| self.elem(self.from_digits(&dg))))
    }

    /// The element with the given index in `[0, p^{Ds})`, coefficients in base `p^s`.
    pub fn element_at(&self, index: u64) -> Poly {
        let q = self.zps.modulus();
        let mut rest = index;
        let coeffs: Vec<u64> = (0..self.dim())
            .map(|_| {
                let c = rest % q;
                rest /= q;
                c
            })
            .collect();
        Poly::from_coeffs(self.zps, coeffs)
    }

    /// Inverse of [`element_at`](Self::element_at).
    pub fn index_of(&self, a: &Poly) -> u64 {
        let q = self.zps.modulus();
        (0..self.dim()).rev().fold(0, |acc, j| acc * q + a.coeff(j))
    }

    /// `|R_i|` when it fits in `u64`.
    pub fn size(&self) -> Option<u64> {
        self.zps.modulus().checked_pow(self.dim() as u32)
    }
}

/// All digit sequences `(b_0, ..., b_{l-1})` with `b_0 ≠ 0`, each digit a
/// coefficient vector of length `d` over `F_p` (trimmed). Order is
/// lexicographic with `b_0` most significant, and within a digit the
/// constant coefficient most significant.
pub fn delta_digits(p: u64, d: usize, l: usize) -> impl Iterator<Item = Vec<Vec<u64>>> {
    let pd = p.pow(d as u32);
    let code_to_digit = move |code: u64| {
        let mut coeffs: Vec<u64> = (0..d)
            .map(|j| code / p.pow((d - 1 - j) as u32) % p)
            .collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        coeffs
    };
    let tail = pd.pow(l.saturating_sub(1) as u32);
    let total = if l == 0 { 0 } else { (pd - 1) * tail };
    (0..total).map(move |idx| {
        let mut digits = vec![code_to_digit(idx / tail + 1)];
        let mut rest = idx % tail;
        let mut place = tail;
        for _ in 1..l {
            place /= pd;
            digits.push(code_to_digit(rest / place));
            rest %= place;
        }
        digits
    })
}

/// `η^d f(η^{-1} x^{p^k})`: the coefficient of `x^{p^k j}` is `c_j η^{d-j}`.
pub fn defining_poly(f: &Poly, eta: u64, pk: usize) -> Poly {
    let z = f.ring();
    let d = f.degree().expect("nonzero factor");
    let mut coeffs = vec![0u64; pk * d + 1];
    for (j, &c) in f.coeffs().iter().enumerate() {
        coeffs[pk * j] = z.mul(c, z.pow(eta, (d - j) as u64));
    }
    Poly::from_coeffs(z, coeffs)
}
