//! Why `(O, O(n))` on the projective line extends to a helix only for
//! `n = 1`.
//!
//! If the cokernel of `O -> Hom(O, O(n))^* (x) O(n)` were
//! `O(a_1) + ... + O(a_n) + T` with `T` torsion of length `t`, taking global
//! sections after twisting gives three linear conditions on the `h^0`'s:
//!
//! ```text
//! sum h0(a_i - n)       + t = 2n     (twist by -n)
//! sum h0(a_i - (n + 1)) + t = n      (twist by -(n + 1))
//! sum h0(a_i - n)       + t = n + 1  (helix condition)
//! ```
//!
//! [`feasibility`] enumerates all solutions; [`contradiction_certificate`]
//! instantiates the symbolic argument that there are none for `n >= 2`.

use serde::Serialize;

use crate::error::{Error, Result};

/// `h^0(O(m))` on the projective line.
pub fn h0_p1(m: i64) -> u64 {
    if m >= 0 {
        m as u64 + 1
    } else {
        0
    }
}

/// Candidate splitting type of the cokernel: sorted twists `a` and the
/// torsion length `t`.
///
/// Every twist `a_i <= n - 1` contributes nothing to any of the three
/// conditions, so such twists are all reported as `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SplitBundleCandidate {
    pub a: Vec<i64>,
    pub t: u64,
}

/// Sums `(sum h0(a_i - n), sum h0(a_i - n - 1))`.
fn sums(n: i64, a: &[i64]) -> (u64, u64) {
    a.iter().fold((0, 0), |(s, r), &ai| (s + h0_p1(ai - n), r + h0_p1(ai - n - 1)))
}

/// Whether `(a, t)` satisfies all three conditions.
pub fn satisfies(n: u32, candidate: &SplitBundleCandidate) -> bool {
    let n64 = n as i64;
    let (s, r) = sums(n64, &candidate.a);
    let t = candidate.t;
    let n = n as u64;
    s + t == 2 * n && r + t == n && s + t == n + 1
}

/// All solutions with `a_i <= bound` and `0 <= t <= 2n`, sorted.
///
/// A solution needs `h0(a_i - n) <= n + 1`, i.e. `a_i <= 2n`, so any
/// `bound >= 2n` gives the complete list.
pub fn feasibility(n: u32, bound: i64) -> Result<Vec<SplitBundleCandidate>> {
    if n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let n64 = n as i64;
    if bound < 2 * n64 {
        return Err(Error::Precondition(format!(
            "bound {bound} is below 2n = {}; the search would be incomplete",
            2 * n64
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n as usize);
    search(n, bound, n64 - 1, 0, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn search(
    n: u32,
    bound: i64,
    min: i64,
    partial: u64,
    current: &mut Vec<i64>,
    out: &mut Vec<SplitBundleCandidate>,
) {
    let n64 = n as i64;
    if current.len() == n as usize {
        for t in 0..=2 * n as u64 {
            let candidate = SplitBundleCandidate { a: current.clone(), t };
            if satisfies(n, &candidate) {
                out.push(candidate);
            }
        }
        return;
    }
    for ai in min..=bound {
        let s = partial + h0_p1(ai - n64);
        if s > 2 * n as u64 {
            break;
        }
        current.push(ai);
        search(n, bound, ai, s, current, out);
        current.pop();
    }
}

/// The symbolic impossibility argument, instantiated at `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContradictionCertificate {
    pub n: u64,
    /// Right-hand sides of the three conditions.
    pub rhs_twist_minus_n: u64,
    pub rhs_twist_minus_n_plus_1: u64,
    pub rhs_helix: u64,
    /// `sum (h0(a_i - n) - h0(a_i - n - 1))`; each term is 1 exactly when
    /// `a_i >= n`.
    pub difference: u64,
    pub summands_at_least_n: u64,
    /// Torsion length forced when the one large twist equals `n`.
    pub forced_torsion: u64,
    /// Left side of the twist-by-`-n` condition once the others hold. It is
    /// `n + 1` for every admissible large twist `n + k` (then `t = n - k`).
    pub forced_lhs_twist_minus_n: u64,
    pub contradiction: bool,
    pub steps: Vec<String>,
}

pub fn contradiction_certificate(n: u32) -> Result<ContradictionCertificate> {
    if n < 2 {
        return Err(Error::Domain(format!("the argument needs n > 1, got n = {n}")));
    }
    let n = n as u64;
    let (rhs_minus_n, rhs_minus_n1, rhs_helix) = (2 * n, n, n + 1);
    let difference = rhs_helix - rhs_minus_n1;
    let forced_torsion = rhs_helix - 1;
    let forced_lhs = 1 + forced_torsion;
    let steps = vec![
        format!("helix condition minus twist by -(n+1): sum (h0(a_i - {n}) - h0(a_i - {})) = {rhs_helix} - {rhs_minus_n1} = {difference}", n + 1),
        format!("each difference is 1 iff a_i >= {n}, so exactly one a_j >= {n}"),
        format!("with a_j = {n}: h0(a_j - {n}) = 1, so the helix condition gives t = {rhs_helix} - 1 = {forced_torsion}"),
        format!("with a_j = {n} + k: h0 = k + 1 and t = {n} - k; either way sum h0(a_i - {n}) + t = {forced_lhs}"),
        format!("twist by -n requires {rhs_minus_n}, but the left side is {forced_lhs}: {rhs_minus_n} != {forced_lhs}"),
    ];
    Ok(ContradictionCertificate {
        n,
        rhs_twist_minus_n: rhs_minus_n,
        rhs_twist_minus_n_plus_1: rhs_minus_n1,
        rhs_helix,
        difference,
        summands_at_least_n: difference,
        forced_torsion,
        forced_lhs_twist_minus_n: forced_lhs,
        contradiction: forced_lhs != rhs_minus_n,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_values() {
        assert_eq!(h0_p1(3), 4);
        assert_eq!(h0_p1(0), 1);
        assert_eq!(h0_p1(-5), 0);
    }

    #[test]
    fn n_one_solutions() {
        // Both O(2) and O(1) + (length-1 torsion) satisfy the three counts.
        let got = feasibility(1, 6).unwrap();
        assert_eq!(
            got,
            vec![
                SplitBundleCandidate { a: vec![1], t: 1 },
                SplitBundleCandidate { a: vec![2], t: 0 },
            ]
        );
        assert!(got.contains(&SplitBundleCandidate { a: vec![2], t: 0 }));
    }

    #[test]
    fn n_one_stable_in_bound() {
        let base = feasibility(1, 2).unwrap();
        for bound in 2..12 {
            assert_eq!(feasibility(1, bound).unwrap(), base);
        }
    }

    #[test]
    fn no_solutions_for_n_at_least_two() {
        assert!(feasibility(2, 10).unwrap().is_empty());
        assert!(feasibility(4, 14).unwrap().is_empty());
        for n in 2..=6u32 {
            let n64 = n as i64;
            assert!(feasibility(n, 3 * n64 + 2).unwrap().is_empty());
            assert_eq!(feasibility(n, 2 * n64).unwrap(), feasibility(n, 3 * n64 + 2).unwrap());
        }
    }

    #[test]
    fn bound_precondition() {
        assert!(matches!(feasibility(2, 3), Err(Error::Precondition(_))));
        assert!(feasibility(0, 3).is_err());
    }

    #[test]
    fn brute_force_over_raw_twists_agrees() {
        // Oracle: all ordered tuples over a wide range including negative
        // twists, canonicalised afterwards.
        for n in 1..=3u32 {
            let n64 = n as i64;
            let range: Vec<i64> = (-3..=2 * n64 + 1).collect();
            let mut found = std::collections::BTreeSet::new();
            let mut idx = vec![0usize; n as usize];
            loop {
                let a: Vec<i64> = idx.iter().map(|&k| range[k]).collect();
                for t in 0..=2 * n as u64 {
                    let c = SplitBundleCandidate { a: a.clone(), t };
                    if satisfies(n, &c) {
                        let mut canon: Vec<i64> = a.iter().map(|&x| x.max(n64 - 1)).collect();
                        canon.sort();
                        found.insert(SplitBundleCandidate { a: canon, t });
                    }
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < range.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
            let want: Vec<_> = found.into_iter().collect();
            assert_eq!(feasibility(n, 2 * n64 + 1).unwrap(), want, "n={n}");
        }
    }

    #[test]
    fn certificates() {
        let c = contradiction_certificate(2).unwrap();
        assert_eq!(c.forced_torsion, 2);
        assert_eq!(c.rhs_twist_minus_n, 4);
        assert_eq!(c.forced_lhs_twist_minus_n, 3);
        assert!(c.contradiction);
        let c = contradiction_certificate(3).unwrap();
        assert_eq!(c.forced_torsion, 3);
        assert!(matches!(contradiction_certificate(1), Err(Error::Domain(_))));
    }
}
