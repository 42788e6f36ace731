//! The helix on an elliptic curve seen through K-theory.
//!
//! An indecomposable bundle is recorded by its Chern pair `(rank, degree)`.
//! Between members of a helix `Ext^1` vanishes in the increasing direction
//! and `Hom` vanishes in the decreasing one, so every Hom dimension is the
//! Euler pairing `r d' - r' d`. Mutation along the Euler sequence
//! `0 -> L_i -> Hom(L_i, L_{i+1})^* (x) L_{i+1} -> L_{i+2} -> 0` is
//! `c_{i+2} = n c_{i+1} - c_i` on Chern pairs, by additivity of rank and
//! degree.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::zalgebra::DimensionTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernPair {
    rank: BigInt,
    degree: BigInt,
}

impl ChernPair {
    pub fn new(rank: impl Into<BigInt>, degree: impl Into<BigInt>) -> Result<Self> {
        let rank = rank.into();
        if rank < BigInt::one() {
            return Err(Error::Domain(format!("rank must be at least 1, got {rank}")));
        }
        Ok(Self {
            rank,
            degree: degree.into(),
        })
    }

    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn slope(&self) -> Rational {
        slope(self)
    }

    /// Chern pair of the dual bundle.
    pub fn dual(&self) -> Self {
        Self {
            rank: self.rank.clone(),
            degree: -&self.degree,
        }
    }
}

impl fmt::Display for ChernPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rank, self.degree)
    }
}

/// `chi(c1, c2) = rank(c1) deg(c2) - rank(c2) deg(c1)`.
pub fn euler_pairing(c1: &ChernPair, c2: &ChernPair) -> BigInt {
    &c1.rank * &c2.degree - &c2.rank * &c1.degree
}

fn mutation_pairing(c_i: &ChernPair, c_next: &ChernPair) -> Result<BigInt> {
    let n = euler_pairing(c_i, c_next);
    if n < BigInt::from(2) {
        return Err(Error::MutationUndefined { pairing: n });
    }
    Ok(n)
}

fn combine(n: &BigInt, keep: &ChernPair, drop: &ChernPair) -> Result<ChernPair> {
    ChernPair::new(n * &keep.rank - &drop.rank, n * &keep.degree - &drop.degree)
}

/// The next member to the right: `n c_next - c_i`, `n = chi(c_i, c_next)`.
pub fn mutate_right(c_i: &ChernPair, c_next: &ChernPair) -> Result<ChernPair> {
    let n = mutation_pairing(c_i, c_next)?;
    combine(&n, c_next, c_i)
}

/// The next member to the left: `n c_i - c_next`, `n = chi(c_i, c_next)`.
pub fn mutate_left(c_i: &ChernPair, c_next: &ChernPair) -> Result<ChernPair> {
    let n = mutation_pairing(c_i, c_next)?;
    combine(&n, c_i, c_next)
}

pub fn slope(c: &ChernPair) -> Rational {
    Rational::new(c.degree.clone(), c.rank.clone())
}

/// A finite window `base_index..base_index + len` of a helix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelixWindow {
    base_index: i64,
    pairs: Vec<ChernPair>,
    d: BigInt,
}

impl HelixWindow {
    /// Extends the adjacent pair `(first, second)` sitting at indices
    /// `(first_index, first_index + 1)` by mutation until it covers
    /// `lo..=hi`.
    pub fn from_pair(
        first_index: i64,
        first: ChernPair,
        second: ChernPair,
        lo: i64,
        hi: i64,
    ) -> Result<Self> {
        if lo > first_index || hi < first_index + 1 {
            return Err(Error::Precondition(format!(
                "window [{lo}, {hi}] must contain the seed indices {first_index}, {}",
                first_index + 1
            )));
        }
        let d = mutation_pairing(&first, &second)?;
        let mut left: Vec<ChernPair> = Vec::new();
        let (mut a, mut b) = (first.clone(), second.clone());
        for _ in lo..first_index {
            let prev = mutate_left(&a, &b)?;
            b = a;
            a = prev.clone();
            left.push(prev);
        }
        left.reverse();
        let mut pairs = left;
        pairs.push(first.clone());
        pairs.push(second.clone());
        let (mut a, mut b) = (first, second);
        for _ in (first_index + 1)..hi {
            let next = mutate_right(&a, &b)?;
            a = b;
            b = next.clone();
            pairs.push(next);
        }
        let window = Self {
            base_index: lo,
            pairs,
            d,
        };
        window.check_invariants()?;
        Ok(window)
    }

    pub fn base_index(&self) -> i64 {
        self.base_index
    }

    pub fn lo(&self) -> i64 {
        self.base_index
    }

    pub fn hi(&self) -> i64 {
        self.base_index + self.pairs.len() as i64 - 1
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn pairs(&self) -> &[ChernPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, m: i64) -> Option<&ChernPair> {
        let off = m.checked_sub(self.base_index)?;
        usize::try_from(off).ok().and_then(|k| self.pairs.get(k))
    }

    pub fn member(&self, m: i64) -> Result<&ChernPair> {
        self.get(m).ok_or(Error::Range {
            index: m,
            lo: self.lo(),
            hi: self.hi(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ChernPair)> {
        (self.base_index..).zip(self.pairs.iter())
    }

    /// Constant consecutive pairing `d` and strictly increasing slopes, with
    /// the exact gap `mu_{m+1} - mu_m = d / (r_m r_{m+1})`.
    pub fn check_invariants(&self) -> Result<()> {
        for (m, w) in (self.base_index..).zip(self.pairs.windows(2)) {
            let chi = euler_pairing(&w[0], &w[1]);
            if chi != self.d {
                return Err(Error::Domain(format!(
                    "pairing of members {m}, {} is {chi}, expected {}",
                    m + 1,
                    self.d
                )));
            }
            // mu_{m+1} - mu_m = (r_m d_{m+1} - r_{m+1} d_m) / (r_m r_{m+1}) = chi / (r_m r_{m+1}),
            // so with positive ranks the gap is exactly d / (r_m r_{m+1}) > 0.
            if !w[0].rank.is_positive() || !w[1].rank.is_positive() || !self.d.is_positive() {
                return Err(Error::Domain(format!(
                    "slopes of members {m}, {} are not strictly increasing",
                    m + 1
                )));
            }
        }
        Ok(())
    }
}

/// The helix with `L_{-1} = O` and `L_0 = O(d p)`, over indices
/// `m_min..=m_max`.
pub fn generate_helix(d: i64, m_min: i64, m_max: i64) -> Result<HelixWindow> {
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    if m_min > -1 || m_max < 0 {
        return Err(Error::Precondition(format!(
            "window [{m_min}, {m_max}] must contain -1 and 0"
        )));
    }
    let o = ChernPair::new(1, 0)?;
    let o_dp = ChernPair::new(1, d)?;
    HelixWindow::from_pair(-1, o, o_dp, m_min, m_max)
}

/// The helix of duals, read in the opposite direction: seeded by
/// `O(d p)^* = (1, -d)` at index 0 and `O^* = (1, 0)` at index 1, so that its
/// member `k` should be the dual of member `-k` of [`generate_helix`].
pub fn dual_helix(d: i64, steps: i64) -> Result<HelixWindow> {
    let a = ChernPair::new(1, -d)?;
    let b = ChernPair::new(1, 0)?;
    HelixWindow::from_pair(0, a, b, 0, steps.max(1))
}

/// Index of the first `k` in `0..=steps` where member `-k` of `window` is not
/// the dual of member `k` of the rightward dual helix, if any.
pub fn duality_mismatch(window: &HelixWindow, steps: i64) -> Result<Option<i64>> {
    let d = window
        .d()
        .to_i64()
        .ok_or_else(|| Error::Domain("pairing does not fit in i64".into()))?;
    let dual = dual_helix(d, steps)?;
    for k in 0..=steps {
        if window.member(-k)?.dual() != *dual.member(k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `(p + q sqrt(radicand)) / r` with `r > 0`, `radicand` squarefree and
/// `gcd(p, q, r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSurd {
    #[serde(serialize_with = "crate::serde_big::int")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub q: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub radicand: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub r: BigInt,
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, radicand: BigInt, r: BigInt) -> Result<Self> {
        if r.is_zero() || radicand.is_negative() {
            return Err(Error::Domain("surd needs r != 0 and radicand >= 0".into()));
        }
        let (mut p, mut q, mut r) = if r.is_negative() { (-p, -q, -r) } else { (p, q, r) };
        let (square, free) = split_square(&radicand);
        q *= square;
        let g = p.gcd(&q).gcd(&r);
        if !g.is_zero() && !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Ok(Self {
            p,
            q,
            radicand: free,
            r,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let s = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        (p + q * s) / r
    }

    /// Exact comparison of this surd with a rational.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        // sign of (p xd - r xn) + q xd sqrt(D), with x = xn/xd and xd > 0
        let a = &self.p * x.denom() - &self.r * x.numer();
        let b = &self.q * x.denom();
        sign_of_sum(&a, &b, &self.radicand)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, q) = if self.q.is_negative() { ("-", -&self.q) } else { ("+", self.q.clone()) };
        write!(f, "({} {op} {q}*sqrt({}))/{}", self.p, self.radicand, self.r)
    }
}

/// Sign of `a + b sqrt(D)`.
fn sign_of_sum(a: &BigInt, b: &BigInt, radicand: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if radicand.is_zero() { num_bigint::Sign::NoSign } else { b.sign() };
    use num_bigint::Sign::*;
    match (sa, sb) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
        _ => {
            let lhs = a * a;
            let rhs = b * b * radicand;
            match lhs.cmp(&rhs) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => if sa == Plus { Ordering::Greater } else { Ordering::Less },
                Ordering::Less => if sb == Plus { Ordering::Greater } else { Ordering::Less },
            }
        }
    }
}

/// Returns `(s, f)` with `n = s^2 f` and `f` squarefree.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut f = n.clone();
    let mut s = BigInt::one();
    let mut k = BigInt::from(2);
    while &k * &k <= f {
        let kk = &k * &k;
        while (&f % &kk).is_zero() {
            f /= &kk;
            s *= &k;
        }
        k += 1;
    }
    (s, f)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitSlope {
    pub value: f64,
    pub exact: QuadraticSurd,
}

/// `theta_d = -2d / (d - 2 + sqrt(d^2 - 4))`, the limit of the slopes as the
/// index goes to `-infinity`. Defined for `d > 2` only.
pub fn limit_slope(d: i64) -> Result<LimitSlope> {
    if d <= 2 {
        return Err(Error::Domain(format!(
            "the limit slope theta_d is defined only for d > 2, got d = {d}"
        )));
    }
    let df = d as f64;
    let value = -2.0 * df / (df - 2.0 + (df * df - 4.0).sqrt());
    // Rationalised: d(d - 2 - sqrt(d^2 - 4)) / (2(d - 2)).
    let bd = BigInt::from(d);
    let exact = QuadraticSurd::new(
        &bd * (&bd - 2),
        -bd.clone(),
        &bd * &bd - 4,
        (&bd - 2) * 2,
    )?;
    Ok(LimitSlope { value, exact })
}

/// `dim B_{ij} = dim Hom(L_{-j}, L_{-i})`.
pub fn hom_dim(window: &HelixWindow, i: i64, j: i64) -> Result<BigUint> {
    let source = window.member(-j)?;
    let target = window.member(-i)?;
    Ok(match i.cmp(&j) {
        Ordering::Equal => BigUint::one(),
        Ordering::Greater => BigUint::zero(),
        Ordering::Less => euler_pairing(source, target)
            .to_biguint()
            .ok_or_else(|| Error::Domain(format!("negative Euler pairing for ({i}, {j})")))?,
    })
}

/// Dimension table of the orbit algebra over every `(i, j)` the window
/// supports with `j - i <= maxdeg`. Algebra index `i` uses helix member
/// `-i`, so the table window is `[-hi, -lo]`.
pub fn orbit_dim_table(d: i64, window: &HelixWindow, maxdeg: usize) -> Result<DimensionTable> {
    if window.d() != &BigInt::from(d) {
        return Err(Error::Precondition(format!(
            "window has pairing {}, not d = {d}",
            window.d()
        )));
    }
    let span = (window.hi() - window.lo()) as usize;
    if span < maxdeg {
        return Err(Error::Range {
            index: window.lo() + maxdeg as i64,
            lo: window.lo(),
            hi: window.hi(),
        });
    }
    DimensionTable::from_fn(-window.hi(), -window.lo(), maxdeg, |i, j| hom_dim(window, i, j))
}
