//! Weil spectra, periods, and the divisibility / non-divisibility
//! verdicts.
//!
//! A supersingular curve over F_p has reciprocal roots sqrt(p) w_s^j for
//! a primitive s-th root of unity w_s (orientation fixed as e^{2 pi i/s}).
//! The multiplicity vector u is recovered from the deficits
//! D_n = sum_j u_j w_s^{jn} by an exact inverse DFT in Q(zeta_{lcm(s,4p)}),
//! and every emitted spectrum must re-synthesize all s deficits exactly.
//! Divisibility of L-polynomials is decided twice, independently: by
//! exact rational long division, and at the spectrum level by pointwise
//! multiplicity comparison.

mod cyclotomic;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num_integer::Integer;

use crate::curves::{CurveKind, CurveSpec};
use crate::error::{Error, Result};
use crate::finite_field::PrimeModulus;
use crate::formulas::{self, Deficit};
use crate::zeta::LPolynomial;

use cyclotomic::{CycElem, CyclotomicField};

/// Multiplicities u_j of the reciprocal roots sqrt(p) w_s^j, j = 0..s-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilSpectrum {
    pub p: u64,
    pub s: u64,
    pub u: Vec<u64>,
}

impl WeilSpectrum {
    /// Total multiplicity, which equals 2g for a genus-g curve.
    pub fn total(&self) -> u64 {
        self.u.iter().sum()
    }

    pub fn conjugation_symmetric(&self) -> bool {
        (0..self.s as usize).all(|j| self.u[j] == self.u[(self.s as usize - j) % self.s as usize])
    }

    /// Re-indexes to a period s' that is a multiple of s: the root at
    /// index j becomes the root at index j s'/s.
    pub fn lift(&self, target: u64) -> Result<WeilSpectrum> {
        if target % self.s != 0 {
            return Err(Error::PeriodLift { s: self.s, target });
        }
        let f = (target / self.s) as usize;
        let mut u = vec![0u64; target as usize];
        for (j, &m) in self.u.iter().enumerate() {
            u[j * f] = m;
        }
        Ok(WeilSpectrum { p: self.p, s: target, u })
    }

    /// `{"p":3,"s":24,"u":[...]}`
    pub fn to_json_string(&self) -> String {
        let obj = serde_json::json!({ "p": self.p, "s": self.s, "u": self.u });
        obj.to_string()
    }
}

fn family_period_bound(spec: &CurveSpec) -> u64 {
    let p = spec.p().get();
    match spec.kind() {
        CurveKind::B0 => 4,
        CurveKind::C0 => 4 * p,
        CurveKind::Bk { k } => 4 * k as u64,
        CurveKind::Ck { k, .. } => {
            if k as u64 % p == 0 {
                4 * k as u64
            } else {
                4 * k as u64 * p
            }
        }
    }
}

/// The period: the smallest s with deficit(s) = 2g, i.e. the smallest
/// extension level where the curve is minimal. Searched over the divisors
/// of the family's proven bound in increasing order.
pub fn period(spec: &CurveSpec) -> Result<u64> {
    let bound = family_period_bound(spec);
    let two_g = 2 * spec.genus() as i64;
    for d in 1..=bound {
        if bound % d != 0 {
            continue;
        }
        let def = formulas::deficit(spec, d)?;
        if def.v == 0 && def.u == two_g {
            return Ok(d);
        }
    }
    Err(Error::PeriodNotFound { s_max: bound, two_g: 2 * spec.genus() })
}

fn deficit_to_elem(field: &CyclotomicField, sqrtp: &CycElem, d: &Deficit) -> CycElem {
    let u = field.from_integer(d.u);
    let v = field.scale(sqrtp, &BigRational::from_integer(BigInt::from(d.v)));
    field.add(&u, &v)
}

/// Exact inverse DFT: u_j = (1/s) sum_{n=1}^{s} D_n w_s^{-jn}, computed
/// in Q(zeta_{lcm(s,4p)}) with sqrt(p) embedded by Gauss sum. Emits a
/// spectrum only if every u_j is a nonnegative rational integer, the sum
/// matches D_s, conjugation symmetry holds, and the s deficits
/// re-synthesize exactly.
pub fn spectrum_from_deficits(deficits: &[Deficit], s: u64, p: PrimeModulus) -> Result<WeilSpectrum> {
    assert_eq!(deficits.len(), s as usize, "need deficits at levels 1..s");
    let m = (s).lcm(&(4 * p.get()));
    let field = CyclotomicField::new(m);
    let sqrtp = field.sqrt_p(p)?;
    let step = (m / s) as i64;

    let elems: Vec<CycElem> = deficits.iter().map(|d| deficit_to_elem(&field, &sqrtp, d)).collect();

    let inv_s = BigRational::new(BigInt::one(), BigInt::from(s));
    let mut u = Vec::with_capacity(s as usize);
    for j in 0..s as i64 {
        let mut acc = field.zero();
        for (idx, e) in elems.iter().enumerate() {
            let n = idx as i64 + 1;
            let w = field.zeta_pow(-j * n * step);
            acc = field.add(&acc, &field.mul(e, &w));
        }
        let acc = field.scale(&acc, &inv_s);
        let r = acc.as_rational().ok_or(Error::SpectrumNotIntegral { j: j as u64 })?;
        if !r.is_integer() {
            return Err(Error::SpectrumNotIntegral { j: j as u64 });
        }
        if r.is_negative() {
            return Err(Error::SpectrumNegative { j: j as u64 });
        }
        let value = r.to_integer();
        let value = u64::try_from(&value)
            .map_err(|_| Error::Internal(format!("multiplicity u_{j} = {value} out of range")))?;
        u.push(value);
    }

    // the synthesis at n = s is the plain sum, which must be the deficit
    // there (2g when s is the period)
    let total: u64 = u.iter().sum();
    let d_s = &deficits[s as usize - 1];
    if d_s.v != 0 || i64::try_from(total).map(|t| t != d_s.u).unwrap_or(true) {
        return Err(Error::SpectrumSum { got: total, expected: d_s.u.max(0) as u64 });
    }

    // mandatory exact re-synthesis of every level
    for (idx, e) in elems.iter().enumerate() {
        let n = idx as i64 + 1;
        let mut acc = field.zero();
        for (j, &uj) in u.iter().enumerate() {
            if uj == 0 {
                continue;
            }
            let w = field.zeta_pow(j as i64 * n * step);
            acc = field.add(&acc, &field.scale(&w, &BigRational::from_integer(BigInt::from(uj))));
        }
        if acc != *e {
            return Err(Error::SpectrumResynthesis { n: n as u64 });
        }
    }

    let out = WeilSpectrum { p: p.get(), s, u };
    if let Some(j) = (0..s as usize).find(|&j| out.u[j] != out.u[(s as usize - j) % s as usize]) {
        return Err(Error::SpectrumConjugation { j: j as u64 });
    }
    Ok(out)
}

/// The spectrum of a curve at its own period, from closed-form deficits.
pub fn spectrum(spec: &CurveSpec) -> Result<WeilSpectrum> {
    let s = period(spec)?;
    let deficits: Vec<Deficit> = (1..=s).map(|n| formulas::deficit(spec, n)).collect::<Result<_>>()?;
    spectrum_from_deficits(&deficits, s, spec.p())
}

/// Multiplicity of the reciprocal root +sqrt(p): u_0. Positive for C_p,
/// zero for C_l with l coprime to p, which separates the families the
/// period test cannot.
pub fn sqrtp_multiplicity(spec: &CurveSpec) -> Result<u64> {
    Ok(spectrum(spec)?.u[0])
}

/// Whether period(inner) divides period(outer) - a necessary condition
/// for L(inner) | L(outer), so a `false` certifies non-divisibility
/// without any polynomial division.
pub fn period_divides(inner: &CurveSpec, outer: &CurveSpec) -> Result<bool> {
    Ok(period(outer)? % period(inner)? == 0)
}

/// Compares spectra at the common period lcm(s_inner, s_outer):
/// true iff every multiplicity of the inner curve is at most the outer's.
pub fn spectrum_difference_nonneg(inner: &CurveSpec, outer: &CurveSpec) -> Result<bool> {
    if inner.p() != outer.p() {
        return Err(Error::BaseFieldMismatch {
            p1: inner.p().get(),
            r1: 1,
            p2: outer.p().get(),
            r2: 1,
        });
    }
    let si = spectrum(inner)?;
    let so = spectrum(outer)?;
    let s = si.s.lcm(&so.s);
    let li = si.lift(s)?;
    let lo = so.lift(s)?;
    Ok(li.u.iter().zip(&lo.u).all(|(a, b)| a <= b))
}

/// Result of an exact polynomial division attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionOutcome {
    pub divides: bool,
    /// Integer quotient coefficients when the division is exact.
    pub quotient: Option<Vec<BigInt>>,
}

/// Exact long division of L2 by L1 over the rationals; divides iff the
/// remainder is identically zero. Independent of the spectrum machinery,
/// so the two verdicts witness each other.
pub fn lpoly_divides(l1: &LPolynomial, l2: &LPolynomial) -> Result<DivisionOutcome> {
    if l1.p() != l2.p() || l1.base_degree() != l2.base_degree() {
        return Err(Error::BaseFieldMismatch {
            p1: l1.p(),
            r1: l1.base_degree(),
            p2: l2.p(),
            r2: l2.base_degree(),
        });
    }
    if l1.degree() > l2.degree() {
        return Ok(DivisionOutcome { divides: false, quotient: None });
    }
    let den: Vec<BigRational> = l1.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut rem: Vec<BigRational> =
        l2.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for shift in (0..quot.len()).rev() {
        let f = &rem[shift + dd] / &lead;
        quot[shift] = f.clone();
        if f.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            let delta = &f * d;
            rem[shift + i] -= delta;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Ok(DivisionOutcome { divides: false, quotient: None });
    }
    // an exact quotient of primitive integer polynomials is integral
    let mut ints = Vec::with_capacity(quot.len());
    for (i, c) in quot.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::Internal(format!(
                "exact quotient has non-integer coefficient at degree {i}"
            )));
        }
        ints.push(c.to_integer());
    }
    Ok(DivisionOutcome { divides: true, quotient: Some(ints) })
}

/// Expands prod_j (1 - sqrt(p) w_s^j T)^{u_j} exactly and returns the
/// integer coefficients; together with the count-recurrence polynomial
/// this is the two-witness consistency check.
pub fn expand_spectrum(spectrum: &WeilSpectrum) -> Result<Vec<BigInt>> {
    let p = PrimeModulus::new(spectrum.p)?;
    let m = spectrum.s.lcm(&(4 * spectrum.p));
    let field = CyclotomicField::new(m);
    let sqrtp = field.sqrt_p(p)?;
    let step = (m / spectrum.s) as i64;

    let mut poly: Vec<CycElem> = vec![field.from_integer(1)];
    for (j, &uj) in spectrum.u.iter().enumerate() {
        if uj == 0 {
            continue;
        }
        let root = field.mul(&sqrtp, &field.zeta_pow(j as i64 * step));
        for _ in 0..uj {
            // multiply by (1 - root T)
            let mut next = poly.clone();
            next.push(field.zero());
            for (d, c) in poly.iter().enumerate() {
                let shifted = field.mul(c, &root);
                next[d + 1] = field.sub(&next[d + 1], &shifted);
            }
            poly = next;
        }
    }
    poly.iter()
        .enumerate()
        .map(|(d, c)| {
            let r = c.as_rational().ok_or(Error::SpectrumExpansion { degree: d })?;
            if !r.is_integer() {
                return Err(Error::SpectrumExpansion { degree: d });
            }
            Ok(r.to_integer())
        })
        .collect()
}
