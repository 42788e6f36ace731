//! The `d = 2` orbit algebra made concrete: sections of `O(2n p)` on the
//! cubic `y^2 = x^3 + a x + b`, with `p` the point at infinity.
//!
//! A function is stored as `f(x) + g(x) y`. At infinity `x` has a pole of
//! order 2 and `y` one of order 3, so `H^0(O(2n p))` has basis
//! `{x^i : i <= n} u {x^j y : j <= n - 2}`.

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{rat, Poly, Rational};
use crate::linalg;
use crate::report::{Check, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    a: Rational,
    b: Rational,
}

impl CurveParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if discriminant_term(&a, &b).is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Self { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(rat(a), rat(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `x^3 + a x + b`
    pub fn cubic(&self) -> Poly {
        Poly::new(vec![self.b.clone(), self.a.clone(), Rational::zero(), Rational::one()])
    }
}

/// `4a^3 + 27b^2`
fn discriminant_term(a: &Rational, b: &Rational) -> Rational {
    rat(4) * a * a * a + rat(27) * b * b
}

/// `f(x) + g(x) y` in the function field of the curve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CurveFunction {
    pub f: Poly,
    pub g: Poly,
}

impl CurveFunction {
    pub fn new(f: Poly, g: Poly) -> Self {
        Self { f, g }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(Poly::one(), Poly::zero())
    }

    pub fn x() -> Self {
        Self::x_pow(1)
    }

    pub fn y() -> Self {
        Self::new(Poly::zero(), Poly::one())
    }

    pub fn x_pow(k: usize) -> Self {
        Self::new(Poly::monomial(Rational::one(), k), Poly::zero())
    }

    pub fn x_pow_y(k: usize) -> Self {
        Self::new(Poly::zero(), Poly::monomial(Rational::one(), k))
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// Order of the pole at infinity; `None` for the zero function.
    pub fn pole_order(&self) -> Option<usize> {
        let from_f = self.f.degree().map(|k| 2 * k);
        let from_g = self.g.degree().map(|k| 3 + 2 * k);
        from_f.max(from_g)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.f + &other.f, &self.g + &other.g)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.f.scale(c), self.g.scale(c))
    }
}

impl Serialize for CurveFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = |p: &Poly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("CurveFunction", 2)?;
        st.serialize_field("f", &coeffs(&self.f))?;
        st.serialize_field("g", &coeffs(&self.g))?;
        st.end()
    }
}

/// Product reduced by `y^2 = x^3 + a x + b`.
pub fn multiply(u: &CurveFunction, v: &CurveFunction, params: &CurveParams) -> CurveFunction {
    let gg = &u.g * &v.g;
    let f = &(&u.f * &v.f) + &(&gg * &params.cubic());
    let g = &(&u.f * &v.g) + &(&u.g * &v.f);
    CurveFunction::new(f, g)
}

/// One basis element of `H^0(O(2n p))`: `x^k` or `x^k y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisMonomial {
    pub x_power: usize,
    pub has_y: bool,
}

impl BasisMonomial {
    pub fn pole_order(&self) -> usize {
        2 * self.x_power + if self.has_y { 3 } else { 0 }
    }

    pub fn function(&self) -> CurveFunction {
        if self.has_y {
            CurveFunction::x_pow_y(self.x_power)
        } else {
            CurveFunction::x_pow(self.x_power)
        }
    }
}

/// Basis monomials of degree `n`, in increasing pole order.
pub fn basis_monomials(n: usize) -> Vec<BasisMonomial> {
    let mut out: Vec<BasisMonomial> = (0..=n)
        .map(|k| BasisMonomial { x_power: k, has_y: false })
        .chain((0..n.saturating_sub(1)).map(|k| BasisMonomial { x_power: k, has_y: true }))
        .collect();
    out.sort_by_key(|m| (m.pole_order(), m.x_power));
    out
}

/// Basis of the degree-`n` piece `H^0(O(2n p))`: `{1}` for `n = 0`, `2n`
/// functions otherwise.
pub fn section_basis(n: usize) -> Vec<CurveFunction> {
    basis_monomials(n).iter().map(BasisMonomial::function).collect()
}

/// Coordinates of `u` in [`section_basis`]`(n)`, or `None` if the pole of
/// `u` is too large for degree `n`.
pub fn coordinates(u: &CurveFunction, n: usize) -> Option<Vec<Rational>> {
    if u.pole_order().is_some_and(|p| p > 2 * n) {
        return None;
    }
    Some(
        basis_monomials(n)
            .iter()
            .map(|m| if m.has_y { u.g.coeff(m.x_power) } else { u.f.coeff(m.x_power) })
            .collect(),
    )
}

fn span_rank(funcs: &[CurveFunction], n: usize) -> Result<usize> {
    let rows = funcs
        .iter()
        .map(|u| {
            coordinates(u, n).ok_or_else(|| {
                Error::Domain(format!("function with pole order {:?} is not in degree {n}", u.pole_order()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(&rows))
}

fn products(left: &[CurveFunction], right: &[CurveFunction], params: &CurveParams) -> Vec<CurveFunction> {
    left.iter()
        .flat_map(|u| right.iter().map(move |v| multiply(u, v, params)))
        .collect()
}

/// Generation in degrees one and two: `B_1 B_1` has codimension 1 in `B_2`
/// with complement spanned by `y`, and `B_1 B_{n-1} = B_n` for
/// `3 <= n <= maxdeg`.
pub fn verify_generation(params: &CurveParams, maxdeg: usize) -> Result<VerificationReport> {
    if maxdeg < 3 {
        return Err(Error::Precondition(format!("maxdeg must be at least 3, got {maxdeg}")));
    }
    let b1 = section_basis(1);
    let mut report = VerificationReport::new();

    let b11 = products(&b1, &b1, params);
    let r = span_rank(&b11, 2)?;
    report.push(Check::new("codim_b1b1_in_b2", 1, 4 - r as i64, "dim B_2 - rank(B_1 B_1)"));
    let mut with_y = b11.clone();
    with_y.push(CurveFunction::y());
    report.push(Check::new(
        "y_completes_b2",
        4,
        span_rank(&with_y, 2)?,
        "rank(B_1 B_1 + k y)",
    ));

    for n in 3..=maxdeg {
        let prod = products(&b1, &section_basis(n - 1), params);
        report.push(Check::new(
            format!("b1_b{}_spans_b{n}", n - 1),
            2 * n,
            span_rank(&prod, n)?,
            format!("rank(B_1 B_{}) vs dim B_{n}", n - 1),
        ));
    }
    Ok(report)
}

/// Spanning sets of `S_0..S_maxdeg`, the subalgebra generated by
/// `B_1 = <1, x>`, computed by repeated multiplication.
pub fn degree_one_subalgebra(params: &CurveParams, maxdeg: usize) -> Vec<Vec<CurveFunction>> {
    let b1 = section_basis(1);
    let mut out = vec![vec![CurveFunction::one()]];
    for n in 1..=maxdeg {
        let mut next = products(&b1, &out[n - 1], params);
        next.sort_by_key(|u| u.pole_order());
        next.dedup();
        out.push(next);
    }
    out
}

/// Ranks of [`degree_one_subalgebra`] pieces.
pub fn degree_one_subalgebra_dims(params: &CurveParams, maxdeg: usize) -> Result<Vec<usize>> {
    degree_one_subalgebra(params, maxdeg)
        .iter()
        .enumerate()
        .map(|(n, span)| span_rank(span, n))
        .collect()
}

/// `B_n = S_n (+) y S_{n-2}` as an internal direct sum for
/// `2 <= n <= maxdeg`, plus `S_1 = B_1`.
pub fn verify_decomposition(params: &CurveParams, maxdeg: usize) -> Result<VerificationReport> {
    if maxdeg < 2 {
        return Err(Error::Precondition(format!("maxdeg must be at least 2, got {maxdeg}")));
    }
    let s = degree_one_subalgebra(params, maxdeg);
    let y = CurveFunction::y();
    let mut report = VerificationReport::new();
    report.push(Check::new("s1_equals_b1", 2, span_rank(&s[1], 1)?, "rank S_1 vs dim B_1"));
    for n in 2..=maxdeg {
        let ys: Vec<CurveFunction> = s[n - 2].iter().map(|u| multiply(&y, u, params)).collect();
        let rs = span_rank(&s[n], n)?;
        let ry = span_rank(&ys, n)?;
        let mut both = s[n].clone();
        both.extend(ys);
        let total = span_rank(&both, n)?;
        let direct = rs + ry == total && total == 2 * n;
        report.push(Check::new(
            format!("decomposition_b{n}"),
            format!("{} + {} = {}", n + 1, n - 1, 2 * n),
            format!("{rs} + {ry} = {total}"),
            if direct {
                "internal direct sum".to_string()
            } else {
                "sum is not direct or does not span".to_string()
            },
        ));
    }
    Ok(report)
}

/// `y^2` written as a binary quartic in `u = 1`, `v = x` (both in `B_1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRelation {
    /// `coefficients[k]` multiplies `u^(4-k) v^k`, i.e. the order is
    /// `(c4, c3, c2, c1, c0)` with `c_j` the coefficient of `u^j v^(4-j)`.
    pub coefficients: [Rational; 5],
    pub discriminant: Rational,
}

impl CoverRelation {
    /// The coefficient of `u^j v^(4-j)`.
    pub fn c(&self, j: usize) -> &Rational {
        &self.coefficients[4 - j]
    }
}

impl Serialize for CoverRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CoverRelation", 2)?;
        let cs: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coefficients", &cs)?;
        st.serialize_field("discriminant", &self.discriminant.to_string())?;
        st.end()
    }
}

/// Solves `y^2 = q(u, v)` in `B_4` with `q` in the span of
/// `u^4, u^3 v, u^2 v^2, u v^3, v^4`.
pub fn find_cover_relation(params: &CurveParams) -> Result<CoverRelation> {
    let u = CurveFunction::one();
    let v = CurveFunction::x();
    let power = |f: &CurveFunction, k: usize| {
        (0..k).fold(CurveFunction::one(), |acc, _| multiply(&acc, f, params))
    };
    // order: u^4, u^3 v, u^2 v^2, u v^3, v^4
    let monomials: Vec<CurveFunction> = (0..=4)
        .map(|k| multiply(&power(&u, 4 - k), &power(&v, k), params))
        .collect();
    let basis = monomials
        .iter()
        .map(|m| coordinates(m, 4).expect("degree-4 monomial"))
        .collect::<Vec<_>>();
    let y2 = multiply(&CurveFunction::y(), &CurveFunction::y(), params);
    let target = coordinates(&y2, 4).expect("y^2 lies in degree 4");
    let solution = linalg::solve_combination(&basis, &target)
        .ok_or_else(|| Error::Domain("y^2 is not in the span of degree-one monomials".into()))?;
    let coefficients: [Rational; 5] = solution.try_into().expect("five unknowns");
    let discriminant = binary_quartic_discriminant(&coefficients);
    Ok(CoverRelation {
        coefficients,
        discriminant,
    })
}

/// Discriminant of `sum_k c[k] u^(4-k) v^k`. Nonzero iff the form has four
/// distinct roots on the projective line.
pub fn binary_quartic_discriminant(c: &[Rational; 5]) -> Rational {
    // as the quartic a t^4 + b t^3 + c t^2 + d t + e in t = v/u
    let (a, b, cc, d, e) = (&c[4], &c[3], &c[2], &c[1], &c[0]);
    let t = |k: i64, parts: &[&Rational]| parts.iter().fold(rat(k), |acc, p| acc * *p);
    t(256, &[a, a, a, e, e, e]) - t(192, &[a, a, b, d, e, e]) - t(128, &[a, a, cc, cc, e, e])
        + t(144, &[a, a, cc, d, d, e])
        - t(27, &[a, a, d, d, d, d])
        + t(144, &[a, b, b, cc, e, e])
        - t(6, &[a, b, b, d, d, e])
        - t(80, &[a, b, cc, cc, d, e])
        + t(18, &[a, b, cc, d, d, d])
        + t(16, &[a, cc, cc, cc, cc, e])
        - t(4, &[a, cc, cc, cc, d, d])
        - t(27, &[b, b, b, b, e, e])
        + t(18, &[b, b, b, cc, d, e])
        - t(4, &[b, b, b, d, d, d])
        - t(4, &[b, b, cc, cc, cc, e])
        + t(1, &[b, b, cc, cc, d, d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat_frac, snc_hilbert, orbit_hilbert};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn singular_curves_rejected() {
        assert_eq!(CurveParams::from_ints(0, 0), Err(Error::SingularCurve));
        // 4(-3)^3 + 27(2)^2 = 0
        assert_eq!(CurveParams::from_ints(-3, 2), Err(Error::SingularCurve));
        assert!(CurveParams::from_ints(0, 1).is_ok());
    }

    #[test]
    fn multiply_examples() {
        let e = CurveParams::from_ints(0, 1).unwrap();
        let y = CurveFunction::y();
        let x = CurveFunction::x();
        assert_eq!(multiply(&y, &y, &e), CurveFunction::new(p(&[1, 0, 0, 1]), Poly::zero()));
        assert_eq!(multiply(&x, &y, &e), CurveFunction::new(Poly::zero(), p(&[0, 1])));
        let xpy = CurveFunction::new(p(&[0, 1]), p(&[1]));
        let xmy = CurveFunction::new(p(&[0, 1]), p(&[-1]));
        // x^2 - x^3 - 1
        assert_eq!(multiply(&xpy, &xmy, &e), CurveFunction::new(p(&[-1, 0, 1, -1]), Poly::zero()));
    }

    #[test]
    fn pole_orders() {
        assert_eq!(CurveFunction::zero().pole_order(), None);
        assert_eq!(CurveFunction::one().pole_order(), Some(0));
        assert_eq!(CurveFunction::y().pole_order(), Some(3));
        assert_eq!(CurveFunction::x_pow_y(2).pole_order(), Some(7));
    }

    #[test]
    fn bases() {
        assert_eq!(section_basis(0), vec![CurveFunction::one()]);
        let b2 = section_basis(2);
        assert_eq!(b2.len(), 4);
        for f in [CurveFunction::one(), CurveFunction::x(), CurveFunction::x_pow(2), CurveFunction::y()] {
            assert!(b2.contains(&f));
        }
        let b3 = section_basis(3);
        assert_eq!(b3.len(), 6);
        assert!(b3.contains(&CurveFunction::x_pow_y(1)));
        assert!(b3.contains(&CurveFunction::x_pow(3)));
        for n in 0..=8 {
            let orders: Vec<_> = section_basis(n).iter().map(|f| f.pole_order().unwrap()).collect();
            assert!(orders.windows(2).all(|w| w[0] < w[1]));
            assert!(orders.iter().all(|&o| o <= 2 * n));
        }
    }

    #[test]
    fn basis_dims_match_orbit_series() {
        let b = orbit_hilbert(2, 12).unwrap();
        for n in 0..=12 {
            assert_eq!(rat(section_basis(n).len() as i64), b[n]);
        }
    }

    fn random_function(rng: &mut ChaCha8Rng) -> CurveFunction {
        let lf = rng.gen_range(0..5);
        let lg = rng.gen_range(0..4);
        let mut coeffs = |len: usize| {
            Poly::new((0..len).map(|_| rat_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect())
        };
        let f = coeffs(lf);
        CurveFunction::new(f, coeffs(lg))
    }

    #[test]
    fn valuation_is_additive() {
        let params = CurveParams::new(rat_frac(-1, 2), rat(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut tested = 0;
        while tested < 200 {
            let u = random_function(&mut rng);
            let v = random_function(&mut rng);
            if u.is_zero() || v.is_zero() {
                continue;
            }
            let w = multiply(&u, &v, &params);
            assert_eq!(w.pole_order(), Some(u.pole_order().unwrap() + v.pole_order().unwrap()));
            tested += 1;
        }
    }

    #[test]
    fn multiplication_is_commutative_and_associative() {
        let params = CurveParams::from_ints(-1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (u, v, w) = (random_function(&mut rng), random_function(&mut rng), random_function(&mut rng));
            assert_eq!(multiply(&u, &v, &params), multiply(&v, &u, &params));
            assert_eq!(
                multiply(&multiply(&u, &v, &params), &w, &params),
                multiply(&u, &multiply(&v, &w, &params), &params)
            );
        }
    }

    #[test]
    fn generation_reports() {
        for (a, b) in [(0, 1), (-1, 0)] {
            let params = CurveParams::from_ints(a, b).unwrap();
            let r = verify_generation(&params, 8).unwrap();
            assert!(r.all_pass(), "{r}");
            assert_eq!(r.get("codim_b1b1_in_b2").unwrap().actual, "1");
        }
        let params = CurveParams::from_ints(0, 1).unwrap();
        assert!(matches!(verify_generation(&params, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn decomposition_reports() {
        for (a, b, maxdeg) in [(0, 1, 10), (1, 1, 6)] {
            let params = CurveParams::from_ints(a, b).unwrap();
            let r = verify_decomposition(&params, maxdeg).unwrap();
            assert!(r.all_pass(), "{r}");
            let top = r.get(&format!("decomposition_b{maxdeg}")).unwrap();
            assert_eq!(top.actual, format!("{} + {} = {}", maxdeg + 1, maxdeg - 1, 2 * maxdeg));
        }
    }

    #[test]
    fn decomposition_over_a_grid() {
        for a in -3..=3 {
            for b in -3..=3 {
                let Ok(params) = CurveParams::from_ints(a, b) else { continue };
                let r = verify_decomposition(&params, 5).unwrap();
                assert!(r.all_pass(), "a={a} b={b}: {r}");
            }
        }
    }

    #[test]
    fn degree_one_subalgebra_is_polynomial() {
        let params = CurveParams::from_ints(2, -5).unwrap();
        let dims = degree_one_subalgebra_dims(&params, 10).unwrap();
        let s = snc_hilbert(2, 10).unwrap();
        for n in 0..=10 {
            assert_eq!(rat(dims[n] as i64), s[n]);
        }
    }

    #[test]
    fn cover_relations() {
        let q = find_cover_relation(&CurveParams::from_ints(0, 1).unwrap()).unwrap();
        // u v^3 + u^4
        assert_eq!(q.c(4), &rat(1));
        assert_eq!(q.c(1), &rat(1));
        assert!(q.c(3).is_zero() && q.c(2).is_zero() && q.c(0).is_zero());
        assert_eq!(q.discriminant, rat(-27));

        let q = find_cover_relation(&CurveParams::from_ints(-1, 0).unwrap()).unwrap();
        // u v^3 - u^3 v
        assert_eq!(q.c(1), &rat(1));
        assert_eq!(q.c(3), &rat(-1));
        assert!(q.c(4).is_zero() && q.c(2).is_zero() && q.c(0).is_zero());
        assert_eq!(q.discriminant, rat(4));
    }

    #[test]
    fn discriminant_oracle_from_roots() {
        // (t-1)(t-2)(t-3)(t-4) = t^4 - 10t^3 + 35t^2 - 50t + 24; prod (ri-rj)^2 = 144
        let c = [rat(24), rat(-50), rat(35), rat(-10), rat(1)];
        assert_eq!(binary_quartic_discriminant(&c), rat(144));
        // repeated root
        let c = [rat(1), rat(-2), rat(1), rat(0), rat(0)];
        assert!(binary_quartic_discriminant(&c).is_zero());
    }

    #[test]
    fn discriminant_tracks_curve_discriminant() {
        for (a, b) in [(0, 1), (-1, 0), (1, 1), (2, -5), (-7, 6)] {
            let q = find_cover_relation(&CurveParams::from_ints(a, b).unwrap()).unwrap();
            assert_eq!(q.discriminant, -discriminant_term(&rat(a), &rat(b)));
        }
    }

    #[test]
    fn json_form() {
        let f = CurveFunction::new(p(&[1, 0, 2]), p(&[-1]));
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"f":["1","0","2"],"g":["-1"]}"#);
    }
}
