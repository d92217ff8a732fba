//! Exact arithmetic over `Z/p^s`, `F_p`, polynomials over both, and linear
//! solving modulo `p^s`.
//!
//! Everything above this module reduces to these primitives. Scalars are
//! stored as `u64` in `[0, p^s)`; the modulus travels alongside as a [`Zps`]
//! value, which is `Copy` and cheap to pass around.

mod fp;
mod linear;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fp::{fp_gcd_bezout, is_irreducible};
pub use linear::{solve_linear_mod_ps, SmithSolver};
pub use poly::{reciprocal, Poly, PolyFp, PolyZps};

/// The ring `Z/p^s` (with `s = 1` giving `F_p`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Zps {
    p: u64,
    s: u32,
    q: u64,
}

/// Largest user-facing modulus `p^s`.
pub const MAX_MODULUS: u64 = 1 << 31;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Zps {
    /// Builds `Z/p^s`, rejecting composite `p`, `s = 0` and `p^s > 2^31`.
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidInput("s must be positive".into()));
        }
        let q = checked_pow(p, s)
            .filter(|&q| q <= MAX_MODULUS)
            .ok_or_else(|| {
                Error::InvalidInput(format!("p^s = {p}^{s} exceeds the supported modulus 2^31"))
            })?;
        Ok(Zps { p, s, q })
    }

    /// Internal constructor without the 2^31 cap; moduli up to 2^62 are
    /// still handled exactly (products go through `u128`).
    pub(crate) fn with_exponent(p: u64, s: u32) -> Self {
        let q = checked_pow(p, s)
            .filter(|&q| q <= 1 << 62)
            .expect("internal modulus overflow");
        Zps { p, s, q }
    }

    /// The prime field `F_p`.
    pub fn field(p: u64) -> Self {
        Zps::with_exponent(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The modulus `p^s`.
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn is_field(&self) -> bool {
        self.s == 1
    }

    /// Same prime, different exponent.
    pub fn resized(&self, s: u32) -> Zps {
        Zps::with_exponent(self.p, s)
    }

    /// The residue field `F_p` of this ring.
    pub fn residue_field(&self) -> Zps {
        Zps::field(self.p)
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.q
    }

    #[inline]
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let r = a + b;
        if r >= self.q {
            r - self.q
        } else {
            r
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.q <= 1 << 32 {
            a * b % self.q
        } else {
            ((a as u128 * b as u128) % self.q as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    /// p-adic valuation, with `s` standing in for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.q;
        if a == 0 {
            return self.s;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        let a = a % self.q;
        if !self.is_unit(a) {
            return Err(Error::NotAUnit {
                value: a,
                modulus: self.q,
            });
        }
        // extended Euclid on signed integers
        let (mut r0, mut r1) = (self.q as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quo = r0 / r1;
            (r0, r1) = (r1, r0 - quo * r1);
            (t0, t1) = (t1, t0 - quo * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.q as i128) as u64)
    }

    /// The unique digits `d_j` in `[0, p)` with `a = sum p^j d_j`, exactly `s` of them.
    pub fn padic_digits(&self, a: u64) -> Vec<u64> {
        let mut a = a % self.q;
        (0..self.s)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }
}

impl fmt::Display for Zps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.s)
    }
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// An element of `Z/p^s` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    ring: Zps,
}

impl Residue {
    pub fn new(ring: Zps, value: u64) -> Result<Self> {
        if value >= ring.q {
            return Err(Error::InvalidInput(format!(
                "{value} is not a residue modulo {}",
                ring.q
            )));
        }
        Ok(Residue { value, ring })
    }

    pub fn from_i64(ring: Zps, value: i64) -> Self {
        Residue {
            value: ring.from_i64(value),
            ring,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> Zps {
        self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.value)
    }

    pub fn pow(&self, e: u64) -> Self {
        Residue {
            value: self.ring.pow(self.value, e),
            ring: self.ring,
        }
    }
}

/// Inverse in `Z/p^s`; fails with [`Error::NotAUnit`] when `p` divides `a`.
pub fn inv_residue(a: Residue) -> Result<Residue> {
    Ok(Residue {
        value: a.ring.inv(a.value)?,
        ring: a.ring,
    })
}

/// p-adic digits of `a`, least significant first, always `s` of them.
pub fn padic_digits(a: Residue) -> Vec<u64> {
    a.ring.padic_digits(a.value)
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! residue_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                assert_eq!(self.ring, rhs.ring, "residues from different rings");
                Residue {
                    value: self.ring.$method(self.value, rhs.value),
                    ring: self.ring,
                }
            }
        }
    };
}

residue_binop!(Add, add);
residue_binop!(Sub, sub);
residue_binop!(Mul, mul);

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: self.ring.neg(self.value),
            ring: self.ring,
        }
    }
}
