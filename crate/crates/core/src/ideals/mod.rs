//! Every ideal of a local piece `R_i + u R_i`, parametrized in six cases.
//!
//! With `ν = p^k s` and `π` the uniformizer of `R_i`:
//!
//! | case  | generators                      | parameters                                         |
//! |-------|---------------------------------|----------------------------------------------------|
//! | I     | `π^l`                           | `0 ≤ l ≤ ν`                                        |
//! | II    | `u π^m`                         | `0 ≤ m ≤ ν-1`                                      |
//! | III-a | `π^l + u π^t h`                 | `0 ≤ t < l ≤ ν-1`, `t ≥ 2l-ν`, `h ∈ Δ_{l-t}`       |
//! | III-b | `π^l + u π^t h`                 | `0 ≤ t < l ≤ ν-1`, `t < 2l-ν`, `h ∈ Δ_{ν-l}`       |
//! | IV    | `π^l`, `u π^m`                  | `0 ≤ m < l ≤ ν-1`                                  |
//! | V     | `π^l + u π^t h`, `u π^m`        | `0 ≤ t < m < l ≤ ν-1`, `l+m ≤ ν+t-1`, `h ∈ Δ_{m-t}` |
//!
//! `Δ_j` is the unit group of `R_i/<π^j>`, stored as its `j` digits.

mod count;
mod normalize;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::chainring::{delta_digits, ChainRing};
use crate::crt::PairElem;
use crate::error::{Error, Result};
use crate::modring::Poly;

pub use count::{count_ideals, count_via_parts, omega, omega_direct, psi, psi_direct};
pub use normalize::normalize_ideal;

/// Digits of `h`, each a trimmed `F_p` coefficient vector.
pub type Digits = Vec<Vec<u64>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealSpec {
    I { l: usize },
    II { m: usize },
    IIIa { l: usize, t: usize, h: Digits },
    IIIb { l: usize, t: usize, h: Digits },
    IV { l: usize, m: usize },
    V { l: usize, m: usize, t: usize, h: Digits },
}

impl IdealSpec {
    pub fn case_name(&self) -> &'static str {
        match self {
            IdealSpec::I { .. } => "I",
            IdealSpec::II { .. } => "II",
            IdealSpec::IIIa { .. } => "III-a",
            IdealSpec::IIIb { .. } => "III-b",
            IdealSpec::IV { .. } => "IV",
            IdealSpec::V { .. } => "V",
        }
    }

    /// The whole ring.
    pub fn whole() -> Self {
        IdealSpec::I { l: 0 }
    }

    /// The zero ideal for nilpotency index `nu`.
    pub fn zero(nu: usize) -> Self {
        IdealSpec::I { l: nu }
    }

    /// The `h` digits, if the case has any.
    pub fn h(&self) -> Option<&Digits> {
        match self {
            IdealSpec::IIIa { h, .. } | IdealSpec::IIIb { h, .. } | IdealSpec::V { h, .. } => Some(h),
            _ => None,
        }
    }

    /// Checks parameter ranges for a ring with residue field `F_{p^d}` and
    /// nilpotency index `nu`.
    pub fn validate(&self, p: u64, d: usize, nu: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::SpecOutOfRange(format!("{self}: {msg}")));
        let check_h = |h: &Digits, len: usize| -> Result<()> {
            if h.len() != len {
                return Err(Error::SpecOutOfRange(format!(
                    "{self}: h needs {len} digits, has {}",
                    h.len()
                )));
            }
            if h.iter().any(|dg| dg.len() > d || dg.iter().any(|&c| c >= p) || dg.last() == Some(&0)) {
                return Err(Error::SpecOutOfRange(format!("{self}: malformed digit")));
            }
            if h.first().is_none_or(Vec::is_empty) {
                return Err(Error::SpecOutOfRange(format!("{self}: h is not a unit")));
            }
            Ok(())
        };
        match *self {
            IdealSpec::I { l } if l > nu => bad(format!("l must be at most {nu}")),
            IdealSpec::II { m } if m >= nu => bad(format!("m must be below {nu}")),
            IdealSpec::IIIa { l, t, ref h } => {
                if !(t < l && l < nu && t + nu >= 2 * l) {
                    return bad("needs 0 ≤ t < l ≤ ν-1 and t ≥ 2l-ν".into());
                }
                check_h(h, l - t)
            }
            IdealSpec::IIIb { l, t, ref h } => {
                if !(t < l && l < nu && t + nu < 2 * l) {
                    return bad("needs 0 ≤ t < l ≤ ν-1 and t < 2l-ν".into());
                }
                check_h(h, nu - l)
            }
            IdealSpec::IV { l, m } if !(m < l && l < nu) => bad("needs 0 ≤ m < l ≤ ν-1".into()),
            IdealSpec::V { l, m, t, ref h } => {
                if !(t < m && m < l && l < nu && l + m < nu + t) {
                    return bad("needs 0 ≤ t < m < l ≤ ν-1 and l+m ≤ ν+t-1".into());
                }
                check_h(h, m - t)
            }
            _ => Ok(()),
        }
    }

    /// `log_p` of the number of elements.
    pub fn log_p_cardinality(&self, d: usize, nu: usize) -> usize {
        match *self {
            IdealSpec::I { l } | IdealSpec::IIIa { l, .. } => 2 * d * (nu - l),
            IdealSpec::II { m } => d * (nu - m),
            IdealSpec::IIIb { t, .. } => d * (nu - t),
            IdealSpec::IV { l, m } | IdealSpec::V { l, m, .. } => d * (2 * nu - l - m),
        }
    }

    pub fn cardinality(&self, p: u64, d: usize, nu: usize) -> BigUint {
        BigUint::from(p).pow(self.log_p_cardinality(d, nu) as u32)
    }

    /// Generators inside `R_i + u R_i`.
    pub fn generators(&self, ring: &ChainRing) -> Result<Vec<PairElem>> {
        let z = ring.base();
        self.validate(z.p(), ring.residue_degree(), ring.nu())?;
        let zero = ring.zero();
        let twisted = |l: usize, t: usize, h: &Digits| {
            let h = digits_to_elem(ring, h);
            PairElem::new(ring.pi_pow(l), ring.mul(&ring.pi_pow(t), &h))
        };
        Ok(match self {
            IdealSpec::I { l } => vec![PairElem::new(ring.pi_pow(*l), zero)],
            IdealSpec::II { m } => vec![PairElem::new(zero, ring.pi_pow(*m))],
            IdealSpec::IIIa { l, t, h } | IdealSpec::IIIb { l, t, h } => vec![twisted(*l, *t, h)],
            IdealSpec::IV { l, m } => vec![
                PairElem::new(ring.pi_pow(*l), zero.clone()),
                PairElem::new(zero, ring.pi_pow(*m)),
            ],
            IdealSpec::V { l, m, t, h } => vec![twisted(*l, *t, h), PairElem::new(zero, ring.pi_pow(*m))],
        })
    }
}

/// `Σ b_j π^j` for the given digit vectors.
pub fn digits_to_elem(ring: &ChainRing, h: &Digits) -> Poly {
    let field = ring.base().residue_field();
    let polys: Vec<Poly> = h.iter().map(|c| Poly::from_coeffs(field, c.clone())).collect();
    ring.from_digits(&polys)
}

/// The first `len` digits of `a`, shifted down by `from`: digits `from..from+len`.
pub fn elem_digits(ring: &ChainRing, a: &Poly, from: usize, len: usize) -> Digits {
    ring.digits(a)[from..from + len]
        .iter()
        .map(|b| b.coeffs().to_vec())
        .collect()
}

/// All ideals of `R_i + u R_i` for residue field `F_{p^d}` and nilpotency
/// index `nu`, case by case, parameters in lexicographic order, `h` in
/// digit order.
pub fn enumerate_ideals(p: u64, d: usize, nu: usize) -> impl Iterator<Item = IdealSpec> {
    let case_i = (0..=nu).map(|l| IdealSpec::I { l });
    let case_ii = (0..nu).map(|m| IdealSpec::II { m });
    let case_iiia = (1..nu).flat_map(move |l| {
        ((2 * l).saturating_sub(nu)..l)
            .flat_map(move |t| delta_digits(p, d, l - t).map(move |h| IdealSpec::IIIa { l, t, h }))
    });
    let case_iiib = (1..nu).flat_map(move |l| {
        (0..(2 * l).saturating_sub(nu))
            .flat_map(move |t| delta_digits(p, d, nu - l).map(move |h| IdealSpec::IIIb { l, t, h }))
    });
    let case_iv = (1..nu).flat_map(|l| (0..l).map(move |m| IdealSpec::IV { l, m }));
    let case_v = (2..nu).flat_map(move |l| {
        (1..l).flat_map(move |m| {
            (0..m)
                .filter(move |&t| l + m < nu + t)
                .flat_map(move |t| delta_digits(p, d, m - t).map(move |h| IdealSpec::V { l, m, t, h }))
        })
    });
    case_i
        .chain(case_ii)
        .chain(case_iiia)
        .chain(case_iiib)
        .chain(case_iv)
        .chain(case_v)
}

fn fmt_digits(h: &Digits) -> String {
    let mut end = h.len();
    while end > 1 && h[end - 1].is_empty() {
        end -= 1;
    }
    h[..end]
        .iter()
        .map(|dg| {
            if dg.is_empty() {
                "0".to_string()
            } else {
                dg.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            }
        })
        .collect::<Vec<_>>()
        .join("|")
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealSpec::I { l } => write!(f, "I(l={l})"),
            IdealSpec::II { m } => write!(f, "II(m={m})"),
            IdealSpec::IIIa { l, t, h } => write!(f, "III-a(l={l},t={t},h={})", fmt_digits(h)),
            IdealSpec::IIIb { l, t, h } => write!(f, "III-b(l={l},t={t},h={})", fmt_digits(h)),
            IdealSpec::IV { l, m } => write!(f, "IV(l={l},m={m})"),
            IdealSpec::V { l, m, t, h } => write!(f, "V(l={l},m={m},t={t},h={})", fmt_digits(h)),
        }
    }
}

impl IdealSpec {
    /// Parses the text form. Trailing zero digits of `h` are omitted in text,
    /// so the nilpotency index is needed to restore the full digit count.
    pub fn parse(text: &str, nu: usize) -> Result<Self> {
        let err = || Error::Parse(format!("bad ideal spec {text:?}"));
        let text = text.trim();
        let open = text.find('(').ok_or_else(err)?;
        if !text.ends_with(')') {
            return Err(err());
        }
        let case = &text[..open];
        let body = &text[open + 1..text.len() - 1];
        let mut l = None;
        let mut m = None;
        let mut t = None;
        let mut h: Option<Digits> = None;
        // h comes last and may itself contain commas
        let (params, h_text) = match body.find("h=") {
            Some(i) => (&body[..i], Some(&body[i + 2..])),
            None => (body, None),
        };
        for kv in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, val) = kv.split_once('=').ok_or_else(err)?;
            let val: usize = val.parse().map_err(|_| err())?;
            match key {
                "l" => l = Some(val),
                "m" => m = Some(val),
                "t" => t = Some(val),
                _ => return Err(err()),
            }
        }
        if let Some(ht) = h_text {
            let mut digits = Vec::new();
            for dg in ht.split('|') {
                let coeffs = dg
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| err()))
                    .collect::<Result<Vec<_>>>()?;
                let mut coeffs = coeffs;
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                digits.push(coeffs);
            }
            h = Some(digits);
        }
        let pad = |mut h: Digits, len: usize| -> Result<Digits> {
            if h.len() > len {
                return Err(err());
            }
            h.resize(len, Vec::new());
            Ok(h)
        };
        let spec = match case {
            "I" => IdealSpec::I { l: l.ok_or_else(err)? },
            "II" => IdealSpec::II { m: m.ok_or_else(err)? },
            "III-a" => {
                let (l, t) = (l.ok_or_else(err)?, t.ok_or_else(err)?);
                let h = pad(h.ok_or_else(err)?, l.checked_sub(t).ok_or_else(err)?)?;
                IdealSpec::IIIa { l, t, h }
            }
            "III-b" => {
                let (l, t) = (l.ok_or_else(err)?, t.ok_or_else(err)?);
                let h = pad(h.ok_or_else(err)?, nu.checked_sub(l).ok_or_else(err)?)?;
                IdealSpec::IIIb { l, t, h }
            }
            "IV" => IdealSpec::IV {
                l: l.ok_or_else(err)?,
                m: m.ok_or_else(err)?,
            },
            "V" => {
                let (l, m, t) = (l.ok_or_else(err)?, m.ok_or_else(err)?, t.ok_or_else(err)?);
                let h = pad(h.ok_or_else(err)?, m.checked_sub(t).ok_or_else(err)?)?;
                IdealSpec::V { l, m, t, h }
            }
            _ => return Err(err()),
        };
        Ok(spec)
    }
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    h: Option<Digits>,
}

impl Serialize for IdealSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut raw = RawSpec {
            case: self.case_name().to_string(),
            l: None,
            m: None,
            t: None,
            h: self.h().cloned(),
        };
        match *self {
            IdealSpec::I { l } => raw.l = Some(l),
            IdealSpec::II { m } => raw.m = Some(m),
            IdealSpec::IIIa { l, t, .. } | IdealSpec::IIIb { l, t, .. } => {
                raw.l = Some(l);
                raw.t = Some(t);
            }
            IdealSpec::IV { l, m } => {
                raw.l = Some(l);
                raw.m = Some(m);
            }
            IdealSpec::V { l, m, t, .. } => {
                raw.l = Some(l);
                raw.m = Some(m);
                raw.t = Some(t);
            }
        }
        raw.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IdealSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSpec::deserialize(de)?;
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| D::Error::custom(format!("missing field `{name}`")))
        };
        let need_h = |v: Option<Digits>| v.ok_or_else(|| D::Error::missing_field("h"));
        Ok(match raw.case.as_str() {
            "I" => IdealSpec::I { l: need(raw.l, "l")? },
            "II" => IdealSpec::II { m: need(raw.m, "m")? },
            "III-a" => IdealSpec::IIIa {
                l: need(raw.l, "l")?,
                t: need(raw.t, "t")?,
                h: need_h(raw.h)?,
            },
            "III-b" => IdealSpec::IIIb {
                l: need(raw.l, "l")?,
                t: need(raw.t, "t")?,
                h: need_h(raw.h)?,
            },
            "IV" => IdealSpec::IV {
                l: need(raw.l, "l")?,
                m: need(raw.m, "m")?,
            },
            "V" => IdealSpec::V {
                l: need(raw.l, "l")?,
                m: need(raw.m, "m")?,
                t: need(raw.t, "t")?,
                h: need_h(raw.h)?,
            },
            other => return Err(D::Error::custom(format!("unknown case {other:?}"))),
        })
    }
}
