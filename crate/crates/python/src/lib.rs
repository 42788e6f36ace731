//! Python module `nchelix`. Integers cross as Python `int`, rationals as
//! `fractions.Fraction`; library errors become `ValueError`.

use std::collections::BTreeMap;

use nchelix::exactmath::{Poly, Rational, RationalSeries};
use nchelix::ktheory;
use nchelix::p1verify;
use nchelix::weierstrass::{self, CurveParams};
use nchelix::zalgebra::{self, QuadraticPresentation, RankMode};
use nchelix::{Error, VerificationReport};
use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn natural(name: &str, n: i64) -> PyResult<usize> {
    usize::try_from(n).map_err(|_| PyValueError::new_err(format!("{name} must be non-negative, got {n}")))
}

#[pyclass(name = "ChernPair", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyChernPair(ktheory::ChernPair);

#[pymethods]
impl PyChernPair {
    #[new]
    fn new(rank: BigInt, degree: BigInt) -> PyResult<Self> {
        ktheory::ChernPair::new(rank, degree).map(Self).map_err(err)
    }

    #[getter]
    fn rank(&self) -> BigInt {
        self.0.rank().clone()
    }

    #[getter]
    fn degree(&self) -> BigInt {
        self.0.degree().clone()
    }

    fn slope(&self) -> Rational {
        self.0.slope()
    }

    fn dual(&self) -> Self {
        Self(self.0.dual())
    }

    fn __repr__(&self) -> String {
        format!("ChernPair({}, {})", self.0.rank(), self.0.degree())
    }
}

#[pyclass(name = "HelixWindow", frozen)]
struct PyHelixWindow(ktheory::HelixWindow);

#[pymethods]
impl PyHelixWindow {
    #[getter]
    fn lo(&self) -> i64 {
        self.0.lo()
    }

    #[getter]
    fn hi(&self) -> i64 {
        self.0.hi()
    }

    #[getter]
    fn d(&self) -> BigInt {
        self.0.d().clone()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __getitem__(&self, m: i64) -> PyResult<PyChernPair> {
        self.0.member(m).cloned().map(PyChernPair).map_err(err)
    }

    fn pairs(&self) -> Vec<(i64, PyChernPair)> {
        self.0.iter().map(|(m, c)| (m, PyChernPair(c.clone()))).collect()
    }

    fn __repr__(&self) -> String {
        format!("HelixWindow(d={}, lo={}, hi={})", self.0.d(), self.0.lo(), self.0.hi())
    }
}

#[pyclass(name = "DimensionTable", frozen)]
struct PyDimensionTable(zalgebra::DimensionTable);

#[pymethods]
impl PyDimensionTable {
    fn get(&self, i: i64, j: i64) -> Option<BigUint> {
        self.0.get(i, j).cloned()
    }

    fn entries(&self) -> BTreeMap<(i64, i64), BigUint> {
        self.0.entries().map(|(k, v)| (k, v.clone())).collect()
    }

    fn hat_dims(&self) -> PyResult<Vec<BigUint>> {
        zalgebra::hat_dims(&self.0).map(|g| g.0).map_err(err)
    }

    fn is_connected(&self) -> bool {
        zalgebra::connected_check(&self.0)
    }
}

fn report_list<'py>(py: Python<'py>, report: &VerificationReport) -> PyResult<Vec<Bound<'py, PyDict>>> {
    report
        .checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("check", &c.check)?;
            d.set_item("pass", c.pass)?;
            d.set_item("expected", &c.expected)?;
            d.set_item("actual", &c.actual)?;
            d.set_item("details", &c.details)?;
            Ok(d)
        })
        .collect()
}

/// Coefficients of `numerator / denominator` up to `t^n`.
#[pyfunction]
fn expand(numerator: Vec<Rational>, denominator: Vec<Rational>, n: i64) -> PyResult<Vec<Rational>> {
    let series = RationalSeries::new(Poly::new(numerator), Poly::new(denominator)).map_err(err)?;
    Ok(series.expand(natural("n", n)?))
}

#[pyfunction]
fn recurrence_solve(d: i64, a0: Rational, a1: Rational, n: i64) -> PyResult<Vec<Rational>> {
    nchelix::exactmath::recurrence_solve(d, a0, a1, natural("n", n)?).map_err(err)
}

#[pyfunction]
fn snc_hilbert(d: i64, n: i64) -> PyResult<Vec<Rational>> {
    nchelix::exactmath::snc_hilbert(d, natural("n", n)?).map_err(err)
}

#[pyfunction]
fn orbit_hilbert(d: i64, n: i64) -> PyResult<Vec<Rational>> {
    nchelix::exactmath::orbit_hilbert(d, natural("n", n)?).map_err(err)
}

#[pyfunction]
fn euler_pairing(c1: &PyChernPair, c2: &PyChernPair) -> BigInt {
    ktheory::euler_pairing(&c1.0, &c2.0)
}

#[pyfunction]
fn mutate_right(c_i: &PyChernPair, c_next: &PyChernPair) -> PyResult<PyChernPair> {
    ktheory::mutate_right(&c_i.0, &c_next.0).map(PyChernPair).map_err(err)
}

#[pyfunction]
fn mutate_left(c_i: &PyChernPair, c_next: &PyChernPair) -> PyResult<PyChernPair> {
    ktheory::mutate_left(&c_i.0, &c_next.0).map(PyChernPair).map_err(err)
}

#[pyfunction]
fn generate_helix(d: i64, m_min: i64, m_max: i64) -> PyResult<PyHelixWindow> {
    ktheory::generate_helix(d, m_min, m_max).map(PyHelixWindow).map_err(err)
}

/// `(value, exact)` where `exact` renders `(p + q sqrt(D)) / r`.
#[pyfunction]
fn limit_slope(d: i64) -> PyResult<(f64, String)> {
    let l = ktheory::limit_slope(d).map_err(err)?;
    Ok((l.value, l.exact.to_string()))
}

#[pyfunction]
fn hom_dim(window: &PyHelixWindow, i: i64, j: i64) -> PyResult<BigUint> {
    ktheory::hom_dim(&window.0, i, j).map_err(err)
}

#[pyfunction]
fn orbit_dim_table(d: i64, window: &PyHelixWindow, maxdeg: i64) -> PyResult<PyDimensionTable> {
    ktheory::orbit_dim_table(d, &window.0, natural("maxdeg", maxdeg)?)
        .map(PyDimensionTable)
        .map_err(err)
}

/// Graded dimensions of the quadratic algebra on `d` generators with
/// `sigma` a permutation of `range(d)` (identity when omitted).
#[pyfunction]
#[pyo3(signature = (d, n, mode = "modular", sigma = None))]
fn presentation_dims(d: usize, n: i64, mode: &str, sigma: Option<Vec<usize>>) -> PyResult<Vec<BigUint>> {
    let mode = match mode {
        "modular" => RankMode::Modular,
        "exact" => RankMode::Exact,
        other => return Err(PyValueError::new_err(format!("mode must be 'modular' or 'exact', got {other:?}"))),
    };
    let pres = match sigma {
        Some(p) if p.len() != d => {
            return Err(PyValueError::new_err(format!("sigma has {} entries, expected {d}", p.len())))
        }
        Some(p) => QuadraticPresentation::permutation(&p),
        None => QuadraticPresentation::identity(d),
    }
    .map_err(err)?;
    zalgebra::presentation_dims(&pres, natural("n", n)?, mode).map(|g| g.0).map_err(err)
}

#[pyfunction]
fn verify_canonical_map<'py>(py: Python<'py>, d: i64, maxdeg: i64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let report = zalgebra::verify_canonical_map(d, natural("maxdeg", maxdeg)?).map_err(err)?;
    report_list(py, &report)
}

fn curve(a: Rational, b: Rational) -> PyResult<CurveParams> {
    CurveParams::new(a, b).map_err(err)
}

#[pyfunction]
fn verify_generation<'py>(py: Python<'py>, a: Rational, b: Rational, maxdeg: i64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let report = weierstrass::verify_generation(&curve(a, b)?, natural("maxdeg", maxdeg)?).map_err(err)?;
    report_list(py, &report)
}

#[pyfunction]
fn verify_decomposition<'py>(py: Python<'py>, a: Rational, b: Rational, maxdeg: i64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let report = weierstrass::verify_decomposition(&curve(a, b)?, natural("maxdeg", maxdeg)?).map_err(err)?;
    report_list(py, &report)
}

/// `([c4, c3, c2, c1, c0], discriminant)` for `y^2 = sum c_j u^j v^(4-j)`.
#[pyfunction]
fn find_cover_relation(a: Rational, b: Rational) -> PyResult<(Vec<Rational>, Rational)> {
    let rel = weierstrass::find_cover_relation(&curve(a, b)?).map_err(err)?;
    Ok((rel.coefficients.to_vec(), rel.discriminant))
}

#[pyfunction]
fn h0_p1(m: i64) -> u64 {
    p1verify::h0_p1(m)
}

/// Solutions `(a, t)` with twists up to `bound`.
#[pyfunction]
fn feasibility(n: u32, bound: i64) -> PyResult<Vec<(Vec<i64>, u64)>> {
    let sols = p1verify::feasibility(n, bound).map_err(err)?;
    Ok(sols.into_iter().map(|c| (c.a, c.t)).collect())
}

#[pyfunction]
fn contradiction_certificate<'py>(py: Python<'py>, n: u32) -> PyResult<Bound<'py, PyDict>> {
    let c = p1verify::contradiction_certificate(n).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", c.n)?;
    d.set_item("rhs_twist_minus_n", c.rhs_twist_minus_n)?;
    d.set_item("rhs_twist_minus_n_plus_1", c.rhs_twist_minus_n_plus_1)?;
    d.set_item("rhs_helix", c.rhs_helix)?;
    d.set_item("difference", c.difference)?;
    d.set_item("summands_at_least_n", c.summands_at_least_n)?;
    d.set_item("forced_torsion", c.forced_torsion)?;
    d.set_item("forced_lhs_twist_minus_n", c.forced_lhs_twist_minus_n)?;
    d.set_item("contradiction", c.contradiction)?;
    d.set_item("steps", c.steps)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "nchelix")]
fn nchelix_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChernPair>()?;
    m.add_class::<PyHelixWindow>()?;
    m.add_class::<PyDimensionTable>()?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(recurrence_solve, m)?)?;
    m.add_function(wrap_pyfunction!(snc_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(euler_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(mutate_right, m)?)?;
    m.add_function(wrap_pyfunction!(mutate_left, m)?)?;
    m.add_function(wrap_pyfunction!(generate_helix, m)?)?;
    m.add_function(wrap_pyfunction!(limit_slope, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_dim_table, m)?)?;
    m.add_function(wrap_pyfunction!(presentation_dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify_canonical_map, m)?)?;
    m.add_function(wrap_pyfunction!(verify_generation, m)?)?;
    m.add_function(wrap_pyfunction!(verify_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(find_cover_relation, m)?)?;
    m.add_function(wrap_pyfunction!(h0_p1, m)?)?;
    m.add_function(wrap_pyfunction!(feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(contradiction_certificate, m)?)?;
    Ok(())
}
