//! Linear systems over `Z/p^s`.
//!
//! `Z/p^s` is a local principal ring, so any matrix can be brought to a
//! diagonal of powers of `p` by invertible row and column operations. The
//! solver records both transforms once and then answers many right-hand
//! sides cheaply, which is what the digit expansion inside chain rings needs.

use super::Zps;
use crate::error::{Error, Result};

type Matrix = Vec<Vec<u64>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Precomputed diagonalization `L * A * R = diag(p^e_0, ..., p^e_{rank-1}, 0, ...)`.
#[derive(Clone, Debug)]
pub struct SmithSolver {
    ring: Zps,
    a: Matrix,
    left: Matrix,
    right: Matrix,
    exps: Vec<u32>,
}

impl SmithSolver {
    pub fn new(ring: Zps, a: &[Vec<u64>]) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
        let mut m: Matrix = a
            .iter()
            .map(|r| r.iter().map(|&x| ring.reduce(x)).collect())
            .collect();
        let mut left = identity(rows);
        let mut right = identity(cols);
        let mut exps = Vec::new();

        for k in 0..rows.min(cols) {
            // pivot of least valuation; first in row-major order on ties
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(k) {
                for (j, &x) in row.iter().enumerate().skip(k) {
                    if x == 0 {
                        continue;
                    }
                    let v = ring.valuation(x);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((v, pi, pj)) = best else { break };
            m.swap(k, pi);
            left.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            for row in right.iter_mut() {
                row.swap(k, pj);
            }
            // scale the pivot row so the pivot is exactly p^v
            let pv = ring.pow(ring.p(), v as u64);
            let unit = m[k][k] / pv;
            let uinv = ring.inv(unit).expect("pivot cofactor is a unit");
            for x in m[k].iter_mut() {
                *x = ring.mul(*x, uinv);
            }
            for x in left[k].iter_mut() {
                *x = ring.mul(*x, uinv);
            }
            // every other entry in the pivot row/column is divisible by p^v
            for i in 0..rows {
                if i == k || m[i][k] == 0 {
                    continue;
                }
                let c = m[i][k] / pv;
                for j in 0..cols {
                    let t = ring.mul(c, m[k][j]);
                    m[i][j] = ring.sub(m[i][j], t);
                }
                for j in 0..rows {
                    let t = ring.mul(c, left[k][j]);
                    left[i][j] = ring.sub(left[i][j], t);
                }
            }
            for j in 0..cols {
                if j == k || m[k][j] == 0 {
                    continue;
                }
                let c = m[k][j] / pv;
                for i in 0..rows {
                    let t = ring.mul(c, m[i][k]);
                    m[i][j] = ring.sub(m[i][j], t);
                }
                for row in right.iter_mut() {
                    let t = ring.mul(c, row[k]);
                    row[j] = ring.sub(row[j], t);
                }
            }
            exps.push(v);
        }

        SmithSolver {
            ring,
            a: a.to_vec(),
            left,
            right,
            exps,
        }
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.right.len()
    }

    /// Exponents of the nonzero diagonal entries.
    pub fn diagonal_exponents(&self) -> &[u32] {
        &self.exps
    }

    fn apply(&self, m: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        let r = self.ring;
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| r.add(acc, r.mul(a, b)))
            })
            .collect()
    }

    /// Some `x` with `A x = b`, verified by substitution.
    pub fn solve(&self, b: &[u64]) -> Result<Vec<u64>> {
        if b.len() != self.rows() {
            return Err(Error::LengthMismatch(b.len(), self.rows()));
        }
        let r = self.ring;
        let c = self.apply(&self.left, b);
        let mut y = vec![0u64; self.cols()];
        for (i, &ci) in c.iter().enumerate() {
            match self.exps.get(i) {
                Some(&e) => {
                    let pe = r.pow(r.p(), e as u64);
                    if ci % pe != 0 {
                        return Err(Error::NoSolution);
                    }
                    y[i] = ci / pe;
                }
                None if ci != 0 => return Err(Error::NoSolution),
                None => {}
            }
        }
        let x = self.apply(&self.right, &y);
        if self.apply(&self.a, &x).iter().zip(b).any(|(l, &rr)| *l != r.reduce(rr)) {
            return Err(Error::InternalInconsistency(
                "linear solution failed verification".into(),
            ));
        }
        Ok(x)
    }
}

/// Solves `M x = b` over `Z/p^s`, returning any solution or [`Error::NoSolution`].
pub fn solve_linear_mod_ps(ring: Zps, m: &[Vec<u64>], b: &[u64]) -> Result<Vec<u64>> {
    SmithSolver::new(ring, m).solve(b)
}
