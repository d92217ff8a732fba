use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Zps;
use crate::error::{Error, Result};

/// Dense univariate polynomial over `Z/p^s`, coefficients low-to-high with
/// trailing zeros trimmed. The zero polynomial has an empty coefficient list
/// and `degree() == None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    ring: Zps,
    coeffs: Vec<u64>,
}

/// Polynomials over `Z/p^s` with `s >= 2`.
pub type PolyZps = Poly;
/// Polynomials over `F_p` (the same type with `s = 1`).
pub type PolyFp = Poly;

impl Poly {
    pub fn zero(ring: Zps) -> Self {
        Poly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: Zps) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: Zps, c: u64) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    /// `c * y^deg`.
    pub fn monomial(ring: Zps, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(ring, coeffs)
    }

    /// The variable itself.
    pub fn var(ring: Zps) -> Self {
        Self::monomial(ring, 1, 1)
    }

    /// Builds from raw coefficients, reducing each modulo `p^s`.
    pub fn from_coeffs(ring: Zps, coeffs: Vec<u64>) -> Self {
        let mut p = Poly {
            ring,
            coeffs: coeffs.into_iter().map(|c| ring.reduce(c)).collect(),
        };
        p.trim();
        p
    }

    pub fn from_i64s(ring: Zps, coeffs: &[i64]) -> Self {
        Self::from_coeffs(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    /// Parses the comma-separated, low-to-high text format ("7,5,6,1").
    pub fn parse(ring: Zps, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs = Vec::new();
        for tok in text.split(',') {
            let c: u64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
            if c >= ring.modulus() {
                return Err(Error::Parse(format!(
                    "coefficient {c} is not below {}",
                    ring.modulus()
                )));
            }
            coeffs.push(c);
        }
        Ok(Self::from_coeffs(ring, coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> Zps {
        self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `y^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn scale(&self, c: u64) -> Self {
        let r = self.ring;
        Self::from_coeffs(r, self.coeffs.iter().map(|&a| r.mul(a, c)).collect())
    }

    /// Multiplies by `y^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            ring: self.ring,
            coeffs,
        }
    }

    /// Normalizes by the inverse of the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self
            .ring
            .inv(self.lead())
            .map_err(|_| Error::NonUnitLeadingCoeff(self.lead()))?;
        Ok(self.scale(inv))
    }

    /// Division with remainder by a polynomial whose leading coefficient is a unit.
    pub fn div_rem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        assert_eq!(self.ring, b.ring, "polynomials over different rings");
        let r = self.ring;
        let db = b
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lead_inv = r
            .inv(b.lead())
            .map_err(|_| Error::NonUnitLeadingCoeff(b.lead()))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(r), self.clone()));
        }
        let mut quo = vec![0; rem.len() - db];
        for i in (0..quo.len()).rev() {
            let c = r.mul(rem[i + db], lead_inv);
            quo[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = r.sub(rem[i + j], r.mul(c, bj));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(r, quo), Poly::from_coeffs(r, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.div_rem(b)?.1)
    }

    /// Remainder modulo a monic polynomial, panicking otherwise. Used on the
    /// hot paths where the modulus is known to be monic by construction.
    pub fn rem_monic(&self, m: &Poly) -> Poly {
        debug_assert!(m.is_monic());
        let r = self.ring;
        let dm = m.degree().expect("zero modulus");
        if self.coeffs.len() <= dm {
            return self.clone();
        }
        let mut rem = self.coeffs.clone();
        for i in (dm..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            for (j, &mj) in m.coeffs.iter().enumerate() {
                rem[i - dm + j] = r.sub(rem[i - dm + j], r.mul(c, mj));
            }
        }
        rem.truncate(dm);
        Poly::from_coeffs(r, rem)
    }

    /// `(self * other) mod m` for monic `m`.
    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem_monic(m)
    }

    /// `self^e mod m` for monic `m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.ring).rem_monic(m);
        let mut base = self.rem_monic(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, y: u64) -> u64 {
        let r = self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| r.add(r.mul(acc, y), c))
    }

    /// `self(g) mod m` by Horner's rule, `m` monic.
    pub fn compose_mod(&self, g: &Poly, m: &Poly) -> Poly {
        let mut acc = Poly::zero(self.ring);
        for &c in self.coeffs.iter().rev() {
            acc = (&acc.mul_mod(g, m) + &Poly::constant(self.ring, c)).rem_monic(m);
        }
        acc
    }

    /// `self(y^k)`.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Poly::from_coeffs(self.ring, coeffs)
    }

    /// Coefficientwise reduction modulo `p`.
    pub fn reduce_mod_p(&self) -> Poly {
        self.change_ring(self.ring.residue_field())
    }

    /// Reinterprets the coefficient representatives in another modulus of the
    /// same prime (reducing if the target is smaller).
    pub fn change_ring(&self, ring: Zps) -> Poly {
        assert_eq!(ring.p(), self.ring.p(), "different primes");
        Poly::from_coeffs(ring, self.coeffs.clone())
    }

    /// Coefficient reversal, `y^deg f(1/y)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.coeff(0) == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Poly::from_coeffs(self.ring, c))
    }

    /// Coefficients padded with zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u64> {
        let mut c = self.coeffs.clone();
        assert!(c.len() <= len, "polynomial longer than requested width");
        c.resize(len, 0);
        c
    }
}

/// Reciprocal of `f`; fails on a zero constant term.
pub fn reciprocal(f: &Poly) -> Result<Poly> {
    f.reciprocal()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "polynomials over different rings");
        let r = self.ring;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(r, (0..n).map(|i| r.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "polynomials over different rings");
        let r = self.ring;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(r, (0..n).map(|i| r.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "polynomials over different rings");
        let r = self.ring;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(r);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, b));
            }
        }
        Poly::from_coeffs(r, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let r = self.ring;
        Poly::from_coeffs(r, self.coeffs.iter().map(|&c| r.neg(c)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
