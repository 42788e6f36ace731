//! Rank computations.
//!
//! Dense Gaussian elimination over the rationals for the small matrices of
//! the Weierstrass model, and sparse incremental row echelon forms (over
//! `Z/p` and fraction-free over `Z`) for the relation spans of quadratic
//! presentations, whose matrices are wide but very sparse.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactmath::Rational;

/// Row-reduces `rows` in place; returns the rank.
fn row_reduce(rows: &mut [Vec<Rational>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for x in &mut rows[rank][col..] {
            *x = &*x / &pivot;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m)
}

/// Finds `c` with `sum_k c_k basis[k] = target`, if one exists.
pub fn solve_combination(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = basis.len();
    let m = target.len();
    // Augmented system: unknowns are the basis coefficients, one equation
    // per coordinate.
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let r = row_reduce(&mut rows);
    let mut solution = vec![Rational::zero(); n];
    for row in rows.iter().take(r) {
        let lead = row.iter().position(|c| !c.is_zero())?;
        if lead == n {
            return None;
        }
        solution[lead] = row[n].clone();
    }
    // Free variables are set to zero, so the pivot values above solve it.
    Some(solution)
}

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Incremental row echelon form over `Z/p`, `p` a prime below `2^32`.
pub struct ModEchelon {
    p: u64,
    pivots: HashMap<usize, SparseRow<u64>>,
}

impl ModEchelon {
    pub fn new(p: u64) -> Self {
        Self {
            p,
            pivots: HashMap::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    /// Reduces an integer row mod `p` against the current pivots and keeps it
    /// if it is independent. Returns whether the rank grew.
    pub fn insert(&mut self, row: &[(usize, i64)]) -> bool {
        let p = self.p;
        let mut cur: SparseRow<u64> = row
            .iter()
            .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        loop {
            let Some(&(lead, lv)) = cur.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => {
                    // piv has leading coefficient 1
                    cur = axpy_mod(&cur, piv, p - lv, p);
                }
                None => {
                    let inv = self.inv(lv);
                    for e in cur.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    self.pivots.insert(lead, cur);
                    return true;
                }
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// `x + a*y` mod p.
fn axpy_mod(x: &[(usize, u64)], y: &[(usize, u64)], a: u64, p: u64) -> SparseRow<u64> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map_or(usize::MAX, |e| e.0);
        let cy = y.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if cx < cy {
            i += 1;
            (cx, x[i - 1].1)
        } else if cy < cx {
            j += 1;
            (cy, a * y[j - 1].1 % p)
        } else {
            i += 1;
            j += 1;
            (cx, (x[i - 1].1 + a * y[j - 1].1) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// Incremental fraction-free row echelon form over `Z`.
///
/// Eliminating column `c` from a row `r` with pivot row `q` replaces `r` by
/// `q[c] r - r[c] q` and then divides by the content, so entries stay
/// integral and small.
#[derive(Default)]
pub struct ExactEchelon {
    pivots: HashMap<usize, SparseRow<BigInt>>,
}

impl ExactEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, row: &[(usize, BigInt)]) -> bool {
        let mut cur: SparseRow<BigInt> = row.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        loop {
            let Some((lead, lv)) = cur.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => {
                    let pv = &piv[0].1;
                    let g = pv.gcd(&lv);
                    let (s, t) = (pv / &g, &lv / &g);
                    cur = combine_exact(&cur, &s, piv, &t);
                    primitive(&mut cur);
                }
                None => {
                    primitive(&mut cur);
                    self.pivots.insert(lead, cur);
                    return true;
                }
            }
        }
    }
}

/// `s*x - t*y`
fn combine_exact(x: &[(usize, BigInt)], s: &BigInt, y: &[(usize, BigInt)], t: &BigInt) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map_or(usize::MAX, |e| e.0);
        let cy = y.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if cx < cy {
            i += 1;
            (cx, s * &x[i - 1].1)
        } else if cy < cx {
            j += 1;
            (cy, -(t * &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (cx, s * &x[i - 1].1 - t * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

fn primitive(row: &mut SparseRow<BigInt>) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    for e in row.iter_mut() {
        e.1 = &e.1 / &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn sparse(r: &[i64]) -> Vec<(usize, i64)> {
        r.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &v)| (c, v)).collect()
    }

    #[test]
    fn dense_rank() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solve_in_span() {
        let basis = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let c = solve_combination(&basis, &m(&[&[2, 3, 5]])[0]).unwrap();
        assert_eq!(c, vec![rat(2), rat(3)]);
        assert!(solve_combination(&basis, &m(&[&[1, 1, 0]])[0]).is_none());
    }

    #[test]
    fn sparse_ranks_agree_with_dense() {
        let rows: &[&[i64]] = &[
            &[1, 1, 0, 0],
            &[0, 1, 1, 0],
            &[1, 0, -1, 0],
            &[0, 0, 3, 5],
            &[2, 2, 6, 10],
        ];
        let dense = rank(&m(rows));
        let mut a = ModEchelon::new(2147483647);
        let mut e = ExactEchelon::new();
        for r in rows {
            a.insert(&sparse(r));
            let big: Vec<(usize, BigInt)> = sparse(r).into_iter().map(|(c, v)| (c, v.into())).collect();
            e.insert(&big);
        }
        assert_eq!(dense, 3);
        assert_eq!(a.rank(), 3);
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn small_prime_sees_a_drop() {
        // det = 5: full rank over Q, rank 1 mod 5
        let rows: &[&[i64]] = &[&[1, 2], &[3, 11]];
        let mut a = ModEchelon::new(5);
        for r in rows {
            a.insert(&sparse(r));
        }
        assert_eq!(a.rank(), 1);
        assert_eq!(rank(&m(rows)), 2);
    }
}
