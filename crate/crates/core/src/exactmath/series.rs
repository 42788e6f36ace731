use num_traits::Zero;

use super::{rat, Poly, Rational};
use crate::error::{Error, Result};

/// A rational function `P(t)/Q(t)` viewed as a formal power series.
///
/// `Q(0)` is nonzero, so the expansion exists. Coefficients are computed from
/// the linear recurrence that `Q` imposes on them,
/// `c_n = (p_n - sum_{k>=1} q_k c_{n-k}) / q_0`, at cost `O(N deg Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: Poly,
    denominator: Poly,
    cached: Vec<Rational>,
}

impl RationalSeries {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::InvalidSeries(
                "denominator has zero constant term".into(),
            ));
        }
        Ok(Self {
            numerator,
            denominator,
            cached: Vec::new(),
        })
    }

    /// Builds the series and eagerly caches coefficients `c_0..c_n`.
    pub fn with_terms(numerator: Poly, denominator: Poly, n: usize) -> Result<Self> {
        let mut series = Self::new(numerator, denominator)?;
        series.cached = series.compute(n);
        Ok(series)
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn cached_coefficients(&self) -> &[Rational] {
        &self.cached
    }

    /// Coefficients `c_0..c_n` of the expansion.
    pub fn expand(&self, n: usize) -> Vec<Rational> {
        if n < self.cached.len() {
            return self.cached[..=n].to_vec();
        }
        self.compute(n)
    }

    fn compute(&self, n: usize) -> Vec<Rational> {
        let q = self.denominator.coeffs();
        let q0 = &q[0];
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.numerator.coeff(k);
            for (j, qj) in q.iter().enumerate().skip(1).take(k) {
                if !qj.is_zero() {
                    acc -= qj * &out[k - j];
                }
            }
            out.push(acc / q0);
        }
        out
    }
}

/// `a_0..a_n` for `a_{k+1} = d a_k - a_{k-1}`.
pub fn recurrence_solve(d: i64, a0: Rational, a1: Rational, n: usize) -> Result<Vec<Rational>> {
    if n < 1 {
        return Err(Error::Precondition("recurrence needs N >= 1".into()));
    }
    let d = rat(d);
    let mut out = vec![a0, a1];
    for k in 1..n {
        let next = &d * &out[k] - &out[k - 1];
        out.push(next);
    }
    Ok(out)
}

fn check_d(d: i64) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    Ok(())
}

fn hilbert_denominator(d: i64) -> Poly {
    Poly::from_ints(&[1, -d, 1])
}

/// Coefficients of `1/(1 - d t + t^2)`: the graded dimensions of the
/// noncommutative symmetric algebra on a `d`-dimensional bimodule.
pub fn snc_hilbert(d: i64, n: usize) -> Result<Vec<Rational>> {
    check_d(d)?;
    let series = RationalSeries::new(Poly::from_ints(&[1]), hilbert_denominator(d))?;
    Ok(series.expand(n))
}

/// Coefficients of `(1 + t^2)/(1 - d t + t^2)`: the graded dimensions of the
/// orbit algebra of the degree-`d` helix on an elliptic curve.
pub fn orbit_hilbert(d: i64, n: usize) -> Result<Vec<Rational>> {
    check_d(d)?;
    let series = RationalSeries::new(Poly::from_ints(&[1, 0, 1]), hilbert_denominator(d))?;
    Ok(series.expand(n))
}
