//! Positively graded Z-algebras at the level of graded dimensions, and the
//! quadratic algebras `k<x_1..x_d>/(b)` that present the noncommutative
//! symmetric algebra of a `d`-dimensional bimodule.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{self, Rational};
use crate::ktheory;
use crate::linalg::{self, ExactEchelon, ModEchelon};
use crate::report::{Check, VerificationReport};

/// The two primes used by modular rank computations.
pub const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

/// Largest number of columns (`d^n`) a presentation rank is attempted for.
pub const MAX_COLUMNS: usize = 1 << 22;

/// `dims(i, j) = dim A_{ij}` for `lo <= i <= j <= hi`, `j - i <= maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    lo: i64,
    hi: i64,
    maxdeg: usize,
    dims: BTreeMap<(i64, i64), BigUint>,
}

impl DimensionTable {
    /// Table with no indices at all.
    pub fn empty() -> Self {
        Self {
            lo: 0,
            hi: -1,
            maxdeg: 0,
            dims: BTreeMap::new(),
        }
    }

    pub fn from_fn<F>(lo: i64, hi: i64, maxdeg: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(i64, i64) -> Result<BigUint>,
    {
        let mut dims = BTreeMap::new();
        for i in lo..=hi {
            let top = hi.min(i.saturating_add(maxdeg as i64));
            for j in i..=top {
                let v = f(i, j)?;
                if i == j && v.is_zero() {
                    return Err(Error::Domain(format!("dims({i}, {i}) must be at least 1")));
                }
                dims.insert((i, j), v);
            }
        }
        Ok(Self { lo, hi, maxdeg, dims })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn get(&self, i: i64, j: i64) -> Option<&BigUint> {
        self.dims.get(&(i, j))
    }

    /// `dims(i, i), dims(i, i+1), ...` as far as the table reaches.
    pub fn row(&self, i: i64) -> Vec<BigUint> {
        self.dims
            .range((i, i)..=(i, i64::MAX))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &BigUint)> {
        self.dims.iter().map(|(k, v)| (*k, v))
    }
}

/// Graded dimensions of a connected graded algebra, indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDims(pub Vec<BigUint>);

impl GradedDims {
    pub fn from_u64(values: &[u64]) -> Self {
        Self(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,dim\n");
        for (n, v) in self.0.iter().enumerate() {
            let _ = writeln!(out, "{n},{v}");
        }
        out
    }
}

impl Serialize for GradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            degree: usize,
            #[serde(serialize_with = "crate::serde_big::uint")]
            dim: &'a BigUint,
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (degree, dim) in self.0.iter().enumerate() {
            seq.serialize_element(&Row { degree, dim })?;
        }
        seq.end()
    }
}

/// `k<x_1, ..., x_d> / (b)` with `b = sum_i x_i sigma(x_{d+1-i})`.
///
/// `sigma` acts on generators through its columns:
/// `sigma(x_j) = sum_k sigma[k][j] x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    d: usize,
    sigma: Vec<Vec<Rational>>,
    relation: Vec<Vec<Rational>>,
}

impl QuadraticPresentation {
    pub fn new(d: usize, sigma: Vec<Vec<Rational>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidPresentation("need at least one generator".into()));
        }
        if sigma.len() != d || sigma.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidPresentation(format!("sigma must be {d}x{d}")));
        }
        if linalg::rank(&sigma) != d {
            return Err(Error::InvalidPresentation("sigma is not invertible".into()));
        }
        let mut relation = vec![vec![Rational::zero(); d]; d];
        for (a, row) in relation.iter_mut().enumerate() {
            let partner = d - 1 - a;
            for (k, entry) in row.iter_mut().enumerate() {
                *entry = sigma[k][partner].clone();
            }
        }
        Ok(Self { d, sigma, relation })
    }

    pub fn identity(d: usize) -> Result<Self> {
        let sigma = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(d, sigma)
    }

    /// `sigma(x_j) = x_{perm[j]}` (0-based).
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let d = perm.len();
        let mut sigma = vec![vec![Rational::zero(); d]; d];
        for (j, &k) in perm.iter().enumerate() {
            if k >= d {
                return Err(Error::InvalidPresentation(format!("{k} is not a generator index")));
            }
            sigma[k][j] = Rational::one();
        }
        Self::new(d, sigma)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sigma(&self) -> &[Vec<Rational>] {
        &self.sigma
    }

    /// `relation()[a][b]` is the coefficient of `x_{a+1} x_{b+1}` in `b`.
    pub fn relation(&self) -> &[Vec<Rational>] {
        &self.relation
    }

    /// Relation terms `(a, b, c)` with integer coefficients spanning the same
    /// line as the rational relation.
    fn integer_relation(&self) -> Vec<(usize, usize, BigInt)> {
        let lcm = self
            .relation
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut out = Vec::new();
        for (a, row) in self.relation.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    let v = c.numer() * (&lcm / c.denom());
                    out.push((a, b, v));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RankMode {
    Exact,
    #[default]
    Modular,
}

/// Graded dimensions `s_0..s_n` of the quotient of the free algebra by the
/// two-sided ideal generated by the relation.
///
/// In degree `m` the ideal is spanned by the words `w1 b w2` with
/// `|w1| + |w2| = m - 2`; rows are generated in `(|w1|, w1, w2)` order,
/// words encoded in base `d` with `x_1 < ... < x_d`.
pub fn presentation_dims(pres: &QuadraticPresentation, n: usize, mode: RankMode) -> Result<GradedDims> {
    let d = pres.d();
    checked_pow(d, n)?;
    let relation = pres.integer_relation();
    let mut dims = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let columns = checked_pow(d, m)?;
        if m < 2 {
            dims.push(BigUint::from(columns));
            continue;
        }
        let rank = match mode {
            RankMode::Exact => {
                let mut ech = ExactEchelon::new();
                for row in relation_rows(d, m, &relation) {
                    ech.insert(&row);
                }
                ech.rank()
            }
            RankMode::Modular => {
                let mut ech: Vec<ModEchelon> = PRIMES.iter().map(|&p| ModEchelon::new(p)).collect();
                for row in relation_rows(d, m, &relation) {
                    for e in ech.iter_mut() {
                        let p = BigInt::from(e.prime());
                        let reduced: Vec<(usize, i64)> = row
                            .iter()
                            .map(|(c, v)| (*c, v.mod_floor(&p).to_i64().expect("residue fits")))
                            .collect();
                        e.insert(&reduced);
                    }
                }
                let (ra, rb) = (ech[0].rank(), ech[1].rank());
                if ra != rb {
                    return Err(Error::InconclusiveRank {
                        degree: m,
                        rank_a: ra,
                        rank_b: rb,
                    });
                }
                ra
            }
        };
        dims.push(BigUint::from(columns - rank));
    }
    Ok(GradedDims(dims))
}

fn checked_pow(d: usize, m: usize) -> Result<usize> {
    d.checked_pow(m as u32)
        .filter(|&c| c <= MAX_COLUMNS)
        .ok_or_else(|| {
            Error::Precondition(format!(
                "degree {m} with {d} generators exceeds {MAX_COLUMNS} columns"
            ))
        })
}

fn relation_rows<'a>(
    d: usize,
    m: usize,
    relation: &'a [(usize, usize, BigInt)],
) -> impl Iterator<Item = Vec<(usize, BigInt)>> + 'a {
    (0..=m - 2).flat_map(move |k| {
        let right_len = m - 2 - k;
        let left_count = d.pow(k as u32);
        let right_count = d.pow(right_len as u32);
        let right_scale = right_count;
        let left_scale = d.pow((m - k) as u32);
        (0..left_count).flat_map(move |w1| {
            (0..right_count).map(move |w2| {
                let mut row: Vec<(usize, BigInt)> = relation
                    .iter()
                    .map(|(a, b, c)| (w1 * left_scale + (a * d + b) * right_scale + w2, c.clone()))
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            })
        })
    })
}

/// Graded dimensions of the Z-graded algebra attached to a 1-periodic table:
/// `n -> dims(i, i + n)`, which must not depend on `i`.
pub fn hat_dims(table: &DimensionTable) -> Result<GradedDims> {
    for ((i, j), v) in table.entries() {
        if let Some(w) = table.get(i + 1, j + 1) {
            if v != w {
                return Err(Error::PeriodicityViolation { i, j });
            }
        }
    }
    if table.is_empty() {
        return Ok(GradedDims::default());
    }
    Ok(GradedDims(table.row(table.lo())))
}

/// Connectedness in the dimension model: every `dims(i, i)` is 1.
pub fn connected_check(table: &DimensionTable) -> bool {
    (table.lo()..=table.hi()).all(|i| table.get(i, i).is_some_and(|v| v.is_one()))
}

/// Compares the canonical map from the noncommutative symmetric algebra into
/// the orbit algebra of the degree-`d` helix, degree by degree.
///
/// The symmetric algebra's dimensions come from the quadratic presentation in
/// degrees 0..=2 and from the series `1/(1 - dt + t^2)` beyond; the orbit
/// algebra's come from the K-theory table.
pub fn verify_canonical_map(d: i64, maxdeg: usize) -> Result<VerificationReport> {
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    if maxdeg < 3 {
        return Err(Error::Precondition(format!("maxdeg must be at least 3, got {maxdeg}")));
    }
    let pres = QuadraticPresentation::identity(d as usize)?;
    let s_low = presentation_dims(&pres, 2, RankMode::Modular)?;
    let s = exactmath::to_naturals(&exactmath::snc_hilbert(d, maxdeg)?)?;

    let window = ktheory::generate_helix(d, -(maxdeg as i64) - 1, 0)?;
    let table = ktheory::orbit_dim_table(d, &window, maxdeg)?;
    let b = hat_dims(&table)?;
    let b = b.as_slice();
    let s_low = s_low.as_slice();
    let du = BigUint::from(d as u64);

    let mut report = VerificationReport::new();
    report.push(Check::predicate(
        "connected",
        connected_check(&table),
        "every diagonal entry of the orbit table is 1",
    ));
    report.push(Check::new(
        "degrees_zero_one",
        format!("[{}, {}]", b[0], b[1]),
        format!("[{}, {}]", s_low[0], s_low[1]),
        "symmetric algebra (presentation) vs orbit algebra (table)",
    ));
    report.push(Check::new(
        "presentation_matches_series",
        format!("{:?}", &s[..3]),
        format!("{:?}", s_low),
        "degrees 0..=2",
    ));
    report.push(Check::new(
        "degree_two_codimension",
        1,
        BigInt::from(b[2].clone()) - BigInt::from(s_low[2].clone()),
        "dim B_{i,i+2} - s_2",
    ));

    let first_bad = (2..=maxdeg).find(|&n| b[n] != &s[n] + &s[n - 2]);
    report.push(Check::predicate(
        "hilbert_decomposition",
        first_bad.is_none(),
        match first_bad {
            None => format!("b_n = s_n + s_(n-2) for 2 <= n <= {maxdeg}"),
            Some(n) => format!("fails at n = {n}: b_n = {}, s_n + s_(n-2) = {}", b[n], &s[n] + &s[n - 2]),
        },
    ));

    let first_bad = (3..=maxdeg).find(|&j| b[j] > &b[1] * &b[j - 1] + &b[2] * &b[j - 2]);
    report.push(Check::predicate(
        "generation_bound",
        first_bad.is_none(),
        match first_bad {
            None => format!("b_j <= b_1 b_(j-1) + b_2 b_(j-2) for 3 <= j <= {maxdeg}"),
            Some(j) => format!("fails at j = {j}"),
        },
    ));

    let first_bad = (3..=maxdeg).find(|&j| b[j] > &du * &b[j - 1]);
    report.push(Check::predicate(
        "degree_one_cover",
        first_bad.is_none(),
        match first_bad {
            None => format!("b_j <= d b_(j-1) for 3 <= j <= {maxdeg}"),
            Some(j) => format!("fails at j = {j}"),
        },
    ));
    Ok(report)
}
