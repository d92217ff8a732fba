//! The problem instance: factors of `y^n - 1` over `Z/p^s`, the twisting
//! parameters `w_0`, `ŵ`, `ŵ_0`, and the reciprocal pairing of factors.

mod hensel;
mod split;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modring::{checked_pow, is_irreducible, Poly, Zps};

pub use hensel::lift_pair;
pub use split::{distinct_degree, equal_degree, factor_squarefree};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Which of the two ambient rings: `x^N - (1+pw)` or `x^N - (1+pŵ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Plain,
    Hat,
}

impl Variant {
    pub fn other(self) -> Variant {
        match self {
            Variant::Plain => Variant::Hat,
            Variant::Hat => Variant::Plain,
        }
    }
}

/// The raw user parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub s: u32,
    pub k: u32,
    pub n: u64,
    pub w: u64,
}

impl Params {
    pub fn new(p: u64, s: u32, k: u32, n: u64, w: u64) -> Self {
        Params { p, s, k, n, w }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Monic irreducible factors of `y^n - 1` over `Z/p^s` in canonical order:
/// ascending degree, then the mod-`p` coefficients compared from the top
/// coefficient down.
pub fn factor_xn_minus_1(p: u64, s: u32, n: u64, seed: u64) -> Result<Vec<Poly>> {
    let ring = Zps::new(p, s)?;
    if n == 0 || gcd(p, n) != 1 {
        return Err(Error::InvalidInput(format!(
            "n = {n} must be positive and coprime to p = {p}"
        )));
    }
    let n = n as usize;
    let target = &Poly::monomial(ring, 1, n) - &Poly::one(ring);
    let field = ring.residue_field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residues = factor_squarefree(&target.change_ring(field), &mut rng);
    residues.sort_by_key(factor_order_key);

    let mut factors = Vec::with_capacity(residues.len());
    for fbar in &residues {
        let cofactor = target.change_ring(field).div_rem(fbar)?.0;
        let (_, lifted) = lift_pair(&target, &cofactor, fbar);
        factors.push(lifted);
    }
    let prod = factors.iter().fold(Poly::one(ring), |acc, f| &acc * f);
    if prod != target {
        return Err(Error::InternalInconsistency(
            "lifted factors do not multiply to y^n - 1".into(),
        ));
    }
    Ok(factors)
}

fn factor_order_key(f: &Poly) -> (usize, Vec<u64>) {
    let mut c = f.reduce_mod_p().into_coeffs();
    c.reverse();
    (c.len(), c)
}

/// The unique `w_0 < p^{s-1}` with `(1 + p w_0)^n = 1 + p w` mod `p^s`.
pub fn solve_w0(p: u64, s: u32, n: u64, w: u64) -> Result<u64> {
    let ring = Zps::new(p, s)?;
    if !ring.is_unit(w) {
        return Err(Error::NotAUnit {
            value: w,
            modulus: ring.modulus(),
        });
    }
    let order = ring.resized(s - 1);
    let e = order.inv(n % order.modulus())?;
    let x = ring.pow(ring.add(1, ring.mul(p, w % ring.modulus())), e);
    Ok((x - 1) / p)
}

/// `(ŵ, ŵ_0)` from `(w, w_0)`, both reduced below `p^{s-1}`.
pub fn hat_params(p: u64, s: u32, w: u64, w0: u64) -> Result<(u64, u64)> {
    let ring = Zps::new(p, s)?;
    let inv_rep = |v: u64| -> Result<u64> {
        let t = ring.inv(ring.add(1, ring.mul(p, v)))?;
        Ok((t - 1) / p)
    };
    Ok((inv_rep(w)?, inv_rep(w0)?))
}

/// Reciprocal pairing of a full factor list: returns the factors reordered
/// (fixed points first, then the pairs), `mu` (0-based), `delta`, `lambda`, `epsilon`.
pub fn build_mu_delta(factors: &[Poly]) -> Result<(Vec<Poly>, Vec<usize>, Vec<u64>, usize, usize)> {
    let r = factors.len();
    let partner = |f: &Poly| -> Result<usize> {
        let rec = f.reciprocal()?;
        let monic = rec.monic()?;
        factors
            .iter()
            .position(|g| *g == monic)
            .ok_or_else(|| Error::InternalInconsistency("reciprocal factor not found".into()))
    };
    let mut fixed = Vec::new();
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    let mut seen = vec![false; r];
    for i in 0..r {
        if seen[i] {
            continue;
        }
        let j = partner(&factors[i])?;
        seen[i] = true;
        seen[j] = true;
        if i == j {
            fixed.push(i);
        } else {
            firsts.push(i);
            seconds.push(j);
        }
    }
    let (lambda, epsilon) = (fixed.len(), firsts.len());
    let order: Vec<usize> = fixed.into_iter().chain(firsts).chain(seconds).collect();
    let reordered: Vec<Poly> = order.iter().map(|&i| factors[i].clone()).collect();
    let mu: Vec<usize> = (0..r)
        .map(|i| {
            if i < lambda {
                i
            } else if i < lambda + epsilon {
                i + epsilon
            } else {
                i - epsilon
            }
        })
        .collect();
    let delta: Vec<u64> = reordered.iter().map(|f| f.coeff(0)).collect();
    for i in 0..r {
        let lhs = reordered[i].reciprocal()?;
        if lhs != reordered[mu[i]].scale(delta[i]) {
            return Err(Error::InternalInconsistency(format!(
                "reciprocal of factor {} is not a unit multiple of factor {}",
                i + 1,
                mu[i] + 1
            )));
        }
    }
    Ok((reordered, mu, delta, lambda, epsilon))
}

/// A fully derived problem instance.
#[derive(Clone, Debug)]
pub struct Context {
    pub p: u64,
    pub s: u32,
    pub k: u32,
    pub n: u64,
    /// Code length `p^k n`.
    pub len: usize,
    pub w: u64,
    pub w0: u64,
    pub w_hat: u64,
    pub w0_hat: u64,
    pub factors: Vec<Poly>,
    pub mu: Vec<usize>,
    pub delta: Vec<u64>,
    pub lambda: usize,
    pub epsilon: usize,
    ring: Zps,
}

impl Context {
    pub fn new(params: Params, seed: u64) -> Result<Self> {
        let Params { p, s, k, n, w } = params;
        if s < 2 {
            return Err(Error::InvalidInput("s must be at least 2".into()));
        }
        if k < 1 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        let ring = Zps::new(p, s)?;
        if n == 0 || gcd(p, n) != 1 {
            return Err(Error::InvalidInput(format!("gcd(p, n) = gcd({p}, {n}) must be 1")));
        }
        if w >= ring.modulus() {
            return Err(Error::InvalidInput(format!(
                "w = {w} is not a residue modulo {}",
                ring.modulus()
            )));
        }
        let len = checked_pow(p, k)
            .and_then(|pk| pk.checked_mul(n))
            .filter(|&l| l <= 1 << 24)
            .ok_or_else(|| Error::InvalidInput("code length p^k n is too large".into()))?
            as usize;
        let w0 = solve_w0(p, s, n, w)?;
        let (w_hat, w0_hat) = hat_params(p, s, w, w0)?;
        let factors = factor_xn_minus_1(p, s, n, seed)?;
        for f in &factors {
            if !is_irreducible(&f.reduce_mod_p()) {
                return Err(Error::InternalInconsistency(format!(
                    "factor {f} is not irreducible mod p"
                )));
            }
        }
        let (factors, mu, delta, lambda, epsilon) = build_mu_delta(&factors)?;
        Ok(Context {
            p,
            s,
            k,
            n,
            len,
            w,
            w0,
            w_hat,
            w0_hat,
            factors,
            mu,
            delta,
            lambda,
            epsilon,
            ring,
        })
    }

    pub fn params(&self) -> Params {
        Params::new(self.p, self.s, self.k, self.n, self.w)
    }

    /// `Z/p^s`.
    pub fn ring(&self) -> Zps {
        self.ring
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.factors[i].degree().expect("nonzero factor")
    }

    /// `p^k`.
    pub fn pk(&self) -> usize {
        self.len / self.n as usize
    }

    /// Nilpotency index `p^k s` of every local piece.
    pub fn nu(&self) -> usize {
        self.pk() * self.s as usize
    }

    /// `1 + p w_0` or `1 + p ŵ_0`.
    pub fn eta(&self, v: Variant) -> u64 {
        let w0 = match v {
            Variant::Plain => self.w0,
            Variant::Hat => self.w0_hat,
        };
        self.ring.add(1, self.ring.mul(self.p, w0))
    }

    /// Shift constant `1 + p w` or `1 + p ŵ`.
    pub fn gamma(&self, v: Variant) -> u64 {
        let w = match v {
            Variant::Plain => self.w,
            Variant::Hat => self.w_hat,
        };
        self.ring.add(1, self.ring.mul(self.p, w % self.ring.modulus()))
    }

    /// The `w` parameter that describes the given variant as a plain instance.
    pub fn w_of(&self, v: Variant) -> u64 {
        match v {
            Variant::Plain => self.w,
            Variant::Hat => self.w_hat,
        }
    }

    /// `(1+pw)^2 = 1`, so the two ambient rings coincide.
    pub fn is_self_dual_compatible(&self) -> bool {
        let g = self.gamma(Variant::Plain);
        self.ring.mul(g, g) == 1
    }

    /// `μ` written as 1-based cycles, e.g. `(1)(2 3)`.
    pub fn mu_cycles(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.r()];
        for i in 0..self.r() {
            if seen[i] {
                continue;
            }
            let j = self.mu[i];
            seen[i] = true;
            seen[j] = true;
            if i == j {
                out.push_str(&format!("({})", i + 1));
            } else {
                out.push_str(&format!("({} {})", i + 1, j + 1));
            }
        }
        out
    }

    pub fn summary(&self) -> ContextSummary {
        ContextSummary {
            p: self.p,
            s: self.s,
            k: self.k,
            n: self.n,
            len: self.len,
            w: self.w,
            w0: self.w0,
            w_hat: self.w_hat,
            w0_hat: self.w0_hat,
            factors: self.factors.iter().map(|f| f.coeffs().to_vec()).collect(),
            degrees: (0..self.r()).map(|i| self.degree(i)).collect(),
            mu: self.mu.iter().map(|m| m + 1).collect(),
            delta: self.delta.clone(),
            lambda: self.lambda,
            epsilon: self.epsilon,
        }
    }
}

/// Serializable view of a [`Context`]; `mu` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSummary {
    pub p: u64,
    pub s: u32,
    pub k: u32,
    pub n: u64,
    #[serde(rename = "N")]
    pub len: usize,
    pub w: u64,
    pub w0: u64,
    pub w_hat: u64,
    pub w0_hat: u64,
    pub factors: Vec<Vec<u64>>,
    pub degrees: Vec<usize>,
    pub mu: Vec<usize>,
    pub delta: Vec<u64>,
    pub lambda: usize,
    pub epsilon: usize,
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.p)?;
        writeln!(f, "s = {}", self.s)?;
        writeln!(f, "k = {}", self.k)?;
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "N = {}", self.len)?;
        writeln!(f, "w = {}", self.w)?;
        writeln!(f, "w0 = {}", self.w0)?;
        writeln!(f, "w_hat = {}", self.w_hat)?;
        writeln!(f, "w0_hat = {}", self.w0_hat)?;
        writeln!(f, "r = {}", self.r())?;
        for (i, g) in self.factors.iter().enumerate() {
            writeln!(f, "f[{}] = {} (d = {})", i + 1, g, self.degree(i))?;
        }
        writeln!(f, "mu = {}", self.mu_cycles())?;
        let d: Vec<String> = self.delta.iter().map(u64::to_string).collect();
        writeln!(f, "delta = {}", d.join(","))?;
        writeln!(f, "lambda = {}", self.lambda)?;
        write!(f, "epsilon = {}", self.epsilon)
    }
}
