//! Python bindings: the curve families, their counts, deficits,
//! L-polynomials, spectra and divisibility verdicts.
//!
//! Build with `cargo build --release -p aszeta-py`; the resulting
//! cdylib imports as the module `aszeta_py` (see python/smoke_test.py).

use num::bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use aszeta::{CurveSpec, Error, PrimeModulus};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::NotPrime(_)
        | Error::NotOddPrime(_)
        | Error::ZeroK { .. }
        | Error::BadCoefficientA { .. }
        | Error::GenusOverflow { .. }
        | Error::ZeroN
        | Error::ZeroBaseChange
        | Error::BudgetExceeded { .. } => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn build_spec(family: &str, p: u64, k: Option<u32>, a: u64) -> PyResult<CurveSpec> {
    let pm = PrimeModulus::new(p).map_err(to_py_err)?;
    let need_k = || k.ok_or_else(|| PyValueError::new_err("families B and C require k"));
    match family {
        "B0" => Ok(CurveSpec::b0(pm)),
        "C0" => Ok(CurveSpec::c0(pm)),
        "B" => CurveSpec::bk(pm, need_k()?).map_err(to_py_err),
        "C" => CurveSpec::ck(pm, need_k()?, a).map_err(to_py_err),
        other => Err(PyValueError::new_err(format!(
            "unknown family {other:?}; expected B0, C0, B or C"
        ))),
    }
}

/// One Artin-Schreier curve: family B0, C0, B or C with parameters
/// (p, k, a).
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Curve {
    spec: CurveSpec,
}

#[pymethods]
impl Curve {
    #[new]
    #[pyo3(signature = (family, p, k=None, a=1))]
    fn new(family: &str, p: u64, k: Option<u32>, a: u64) -> PyResult<Self> {
        Ok(Curve { spec: build_spec(family, p, k, a)? })
    }

    fn __repr__(&self) -> String {
        self.spec.to_string()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.spec.p().get()
    }

    #[getter]
    fn k(&self) -> Option<u32> {
        self.spec.k()
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.spec.family_tag()
    }

    fn genus(&self) -> u64 {
        self.spec.genus()
    }

    /// Number of rational points over F_{p^n}.
    /// method: "formula" (closed form), "rank" (quadratic-form linear
    /// algebra) or "brute" (exhaustive enumeration, budget-capped).
    #[pyo3(signature = (n, method="formula", budget=aszeta::DEFAULT_BUDGET))]
    fn count(&self, n: u32, method: &str, budget: u64) -> PyResult<BigInt> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be >= 1"));
        }
        let count = match method {
            "formula" => aszeta::formula_count(&self.spec, n as u64).map_err(to_py_err)?,
            "rank" => aszeta::rank_method_count(&self.spec, n).map_err(to_py_err)?,
            "brute" => {
                aszeta::count_points_bruteforce(&self.spec, n, budget)
                    .map_err(to_py_err)?
                    .count
            }
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown method {other:?}; expected formula, rank or brute"
                )))
            }
        };
        Ok(BigInt::from(count))
    }

    /// The normalized deficit at level n as a pair (u, v) meaning
    /// u + v*sqrt(p).
    fn deficit(&self, n: u64) -> PyResult<(i64, i64)> {
        let d = aszeta::deficit(&self.spec, n).map_err(to_py_err)?;
        Ok((d.u, d.v))
    }

    /// Smallest s with all normalized Weil numbers s-th roots of unity.
    fn period(&self) -> PyResult<u64> {
        aszeta::period(&self.spec).map_err(to_py_err)
    }

    /// (s, [u_0, ..., u_{s-1}]): multiplicities of sqrt(p) w_s^j.
    fn spectrum(&self) -> PyResult<(u64, Vec<u64>)> {
        let sp = aszeta::spectrum(&self.spec).map_err(to_py_err)?;
        Ok((sp.s, sp.u))
    }

    /// Multiplicity of the reciprocal root +sqrt(p).
    fn sqrtp_multiplicity(&self) -> PyResult<u64> {
        aszeta::sqrtp_multiplicity(&self.spec).map_err(to_py_err)
    }

    /// Coefficients c_0..c_{2g} of the L-polynomial over F_{p^m}
    /// (m = 1 is the base field).
    #[pyo3(signature = (m=1))]
    fn lpoly(&self, m: u32) -> PyResult<Vec<BigInt>> {
        let l = aszeta::lpoly_for_curve(&self.spec).map_err(to_py_err)?;
        let l = if m == 1 { l } else { l.base_change(m).map_err(to_py_err)? };
        Ok(l.coeffs().to_vec())
    }

    /// Canonical ascending-power text of the L-polynomial over F_{p^m}.
    #[pyo3(signature = (m=1))]
    fn lpoly_text(&self, m: u32) -> PyResult<String> {
        let l = aszeta::lpoly_for_curve(&self.spec).map_err(to_py_err)?;
        let l = if m == 1 { l } else { l.base_change(m).map_err(to_py_err)? };
        Ok(l.canonical_text())
    }
}

/// True iff L(inner) divides L(outer), by exact rational long division.
#[pyfunction]
fn lpoly_divides(inner: &Curve, outer: &Curve) -> PyResult<bool> {
    let li = aszeta::lpoly_for_curve(&inner.spec).map_err(to_py_err)?;
    let lo = aszeta::lpoly_for_curve(&outer.spec).map_err(to_py_err)?;
    Ok(aszeta::lpoly_divides(&li, &lo).map_err(to_py_err)?.divides)
}

/// The spectrum-level divisibility witness: every multiplicity of the
/// inner curve is at most the outer's at the common period.
#[pyfunction]
fn spectrum_difference_nonneg(inner: &Curve, outer: &Curve) -> PyResult<bool> {
    aszeta::spectrum_difference_nonneg(&inner.spec, &outer.spec).map_err(to_py_err)
}

/// Necessary condition for divisibility: period(inner) | period(outer).
#[pyfunction]
fn period_divides(inner: &Curve, outer: &Curve) -> PyResult<bool> {
    aszeta::period_divides(&inner.spec, &outer.spec).map_err(to_py_err)
}

/// Brute-force check that the count of C_{k,a} over F_{p^n} is the same
/// for every a in F_p^x.
#[pyfunction]
#[pyo3(signature = (p, k, n, budget=aszeta::DEFAULT_BUDGET))]
fn verify_a_invariance(p: u64, k: u32, n: u32, budget: u64) -> PyResult<bool> {
    let pm = PrimeModulus::new(p).map_err(to_py_err)?;
    aszeta::verify_a_invariance(pm, k, n, budget).map_err(to_py_err)
}

#[pymodule]
fn aszeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(lpoly_divides, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_difference_nonneg, m)?)?;
    m.add_function(wrap_pyfunction!(period_divides, m)?)?;
    m.add_function(wrap_pyfunction!(verify_a_invariance, m)?)?;
    Ok(())
}
