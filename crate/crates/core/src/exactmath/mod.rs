//! Exact arithmetic: rationals, dense univariate polynomials, rational power
//! series and the order-2 recurrence `a_{n+1} = d a_n - a_{n-1}`.
//!
//! Nothing in here touches floating point.

mod poly;
mod series;

pub use poly::Poly;
pub use series::{orbit_hilbert, recurrence_solve, snc_hilbert, RationalSeries};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Converts a list of exact values that must be dimensions into naturals.
pub fn to_naturals(values: &[Rational]) -> Result<Vec<BigUint>> {
    values
        .iter()
        .map(|v| {
            if !v.denom().is_one() || v.is_negative() {
                return Err(Error::NonIntegral(v.to_string()));
            }
            Ok(v.numer().magnitude().clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-1").unwrap(), rat(-1));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat_frac(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn naturals_reject_fractions_and_negatives() {
        assert!(to_naturals(&[rat_frac(1, 2)]).is_err());
        assert!(to_naturals(&[rat(-1)]).is_err());
        assert_eq!(
            to_naturals(&[rat(0), rat(7)]).unwrap(),
            vec![BigUint::from(0u32), BigUint::from(7u32)]
        );
    }
}
