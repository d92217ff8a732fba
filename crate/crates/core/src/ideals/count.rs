//! Ideal counts for `R_i + u R_i` with residue field of size `q = p^d` and
//! nilpotency index `m`.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

fn qpow(p: u64, d: usize, e: usize) -> BigUint {
    BigUint::from(p).pow((d * e) as u32)
}

fn to_unsigned(x: BigInt) -> BigUint {
    x.to_biguint().expect("ideal counts are nonnegative")
}

/// Closed form: `Σ_{j=0}^{λ} (1+4j) q^{λ-j}` for `m = 2λ`,
/// `Σ_{j=0}^{λ} (3+4j) q^{λ-j}` for `m = 2λ+1`.
pub fn count_ideals(p: u64, d: usize, m: usize) -> BigUint {
    let lambda = m / 2;
    let base = if m.is_multiple_of(2) { 1u64 } else { 3 };
    (0..=lambda)
        .map(|j| BigUint::from(base + 4 * j as u64) * qpow(p, d, lambda - j))
        .sum()
}

/// Number of case III ideals, closed form (even and odd branches).
pub fn omega(p: u64, d: usize, m: usize) -> BigUint {
    let q1 = BigInt::from(qpow(p, d, 1)) - 1;
    let head = if m.is_multiple_of(2) {
        (BigInt::from(qpow(p, d, m / 2 + 1)) + BigInt::from(qpow(p, d, m / 2)) - 2) / &q1
    } else {
        BigInt::from(2) * (BigInt::from(qpow(p, d, m.div_ceil(2))) - 1) / &q1
    };
    let start = if m.is_multiple_of(2) { m / 2 + 1 } else { m.div_ceil(2) };
    let tail: BigInt = (start..m)
        .map(|j| BigInt::from(2 * j as i64 - m as i64) * BigInt::from(qpow(p, d, m - j - 1)))
        .sum();
    to_unsigned(head - BigInt::from(m as u64 + 1) + q1 * tail)
}

/// Number of case III ideals by summing `|Δ|` over every admissible `(l, t)`.
pub fn omega_direct(p: u64, d: usize, m: usize) -> BigUint {
    let q = qpow(p, d, 1);
    let delta = |j: usize| (&q - 1u32) * qpow(p, d, j - 1);
    let mut total = BigUint::zero();
    for l in 1..m {
        for t in 0..l {
            total += if t + m >= 2 * l { delta(l - t) } else { delta(m - l) };
        }
    }
    total
}

/// The recurrence `Ψ(t) = 0` for `t ≤ 3`, `Ψ(4) = 1`,
/// `Ψ(t) = Ψ(t-1) + Σ_{j=1}^{⌊t/2⌋-1} (t-2j-1) q^{j-1}`.
pub fn psi(p: u64, d: usize, m: usize) -> BigUint {
    if m <= 3 {
        return BigUint::zero();
    }
    let mut acc = BigUint::from(1u8);
    for t in 5..=m {
        for j in 1..t / 2 {
            acc += BigUint::from((t - 2 * j - 1) as u64) * qpow(p, d, j - 1);
        }
    }
    acc
}

/// `Ψ` as the weighted count of case V parameter triples: each `(l, m', t)`
/// with `0 ≤ t < m' < l ≤ m-1` and `l + m' ≤ m + t - 1` contributes `q^{m'-t-1}`.
pub fn psi_direct(p: u64, d: usize, m: usize) -> BigUint {
    let mut total = BigUint::zero();
    for l in 0..m {
        for mm in 0..l {
            for t in 0..mm {
                if l + mm < m + t {
                    total += qpow(p, d, mm - t - 1);
                }
            }
        }
    }
    total
}

/// `1 + m(m+3)/2 + Ω + (q-1) Ψ`.
pub fn count_via_parts(p: u64, d: usize, m: usize) -> BigUint {
    let q1 = qpow(p, d, 1) - 1u32;
    BigUint::from(1 + m * (m + 3) / 2) + omega(p, d, m) + q1 * psi(p, d, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        assert_eq!(count_ideals(2, 1, 6), BigUint::from(59u32));
        assert_eq!(count_ideals(2, 3, 6), BigUint::from(917u32));
        assert_eq!(count_ideals(2, 1, 4), BigUint::from(23u32));
        assert_eq!(count_ideals(2, 1, 3), BigUint::from(13u32));
    }

    #[test]
    fn psi_base_values() {
        for p in [2, 3, 5] {
            assert!(psi(p, 2, 3).is_zero());
            assert_eq!(psi(p, 2, 4), BigUint::from(1u8));
        }
    }

    #[test]
    fn omega_gives_the_right_total_for_length_fourteen() {
        // 59 = 1 + 27 + Ω + Ψ when q = 2, m = 6
        let o = omega_direct(2, 1, 6);
        assert_eq!(BigUint::from(59u32), BigUint::from(28u32) + &o + psi_direct(2, 1, 6));
        assert_eq!(o, omega(2, 1, 6));
    }

    #[test]
    fn closed_forms_agree_with_direct_sums() {
        for p in [2, 3] {
            for d in 1..=3 {
                for m in 2..=8 {
                    assert_eq!(omega(p, d, m), omega_direct(p, d, m), "omega p={p} d={d} m={m}");
                    assert_eq!(psi(p, d, m), psi_direct(p, d, m), "psi p={p} d={d} m={m}");
                    assert_eq!(count_ideals(p, d, m), count_via_parts(p, d, m));
                }
            }
        }
    }
}
