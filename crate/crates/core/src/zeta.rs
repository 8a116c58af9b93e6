//! Exact L-polynomial synthesis from point counts, structural validation,
//! base change, and recovery of counts from a polynomial.
//!
//! With t_m = #X(F_{q^m}) - q^m - 1, the L-polynomial over F_q satisfies
//! m c_m = sum_{i=1}^{m} t_i c_{m-i}, c_0 = 1. Every division must be
//! exact over the integers; a nonzero remainder means the counts cannot
//! come from a curve and is reported, never rounded.

use num::bigint::{BigInt, BigUint};
use num::traits::{One, Signed, Zero};

use crate::curves::CurveSpec;
use crate::error::{Error, Result};
use crate::finite_field::PrimeModulus;
use crate::formulas;

/// Degree-2g integer polynomial over F_{p^r}; coefficient 0 is the
/// constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    p: u64,
    r: u32,
    genus: u64,
    coeffs: Vec<BigInt>,
}

/// One failed structural check, reported by [`LPolynomial::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ConstantTerm,
    LeadingCoefficient,
    FunctionalEquation { i: usize },
    SupersingularValuation { i: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ConstantTerm => write!(f, "c_0 != 1"),
            Violation::LeadingCoefficient => write!(f, "c_2g != q^g"),
            Violation::FunctionalEquation { i } => {
                write!(f, "functional equation fails at i = {i}")
            }
            Violation::SupersingularValuation { i } => {
                write!(f, "ord_p(c_{i}) < i r / 2")
            }
        }
    }
}

impl LPolynomial {
    /// Wraps raw coefficients (length 2g+1). Structural checks live in
    /// [`LPolynomial::validate`], which cache reads must re-run.
    pub fn from_parts(p: PrimeModulus, r: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() % 2 == 0 || coeffs.is_empty() {
            return Err(Error::Internal(format!(
                "L-polynomial needs 2g+1 coefficients, got {}",
                coeffs.len()
            )));
        }
        let genus = ((coeffs.len() - 1) / 2) as u64;
        Ok(LPolynomial { p: p.get(), r, genus, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree r of the base field F_{p^r}.
    pub fn base_degree(&self) -> u32 {
        self.r
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.r)
    }

    /// Checks c_0 = 1, c_2g = q^g, the functional equation
    /// c_{2g-i} = q^{g-i} c_i, and the supersingular valuation bound
    /// ord_p(c_i) >= i r / 2. Returns every violated invariant.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let g = self.genus as usize;
        let q = self.q();
        if self.coeffs[0] != BigInt::one() {
            out.push(Violation::ConstantTerm);
        }
        if self.coeffs[2 * g] != q.pow(u32::try_from(g).unwrap()) {
            out.push(Violation::LeadingCoefficient);
        }
        for i in 0..=g {
            let expected = q.pow(u32::try_from(g - i).unwrap()) * &self.coeffs[i];
            if self.coeffs[2 * g - i] != expected {
                out.push(Violation::FunctionalEquation { i });
            }
        }
        let p = BigInt::from(self.p);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut ord = 0u64;
            let mut v = c.clone();
            while (&v % &p).is_zero() {
                v /= &p;
                ord += 1;
            }
            if 2 * ord < (i as u64) * (self.r as u64) {
                out.push(Violation::SupersingularValuation { i });
            }
        }
        out
    }

    /// The log-derivative data t_1..t_{2g} recovered from the
    /// coefficients: t_m = m c_m - sum_{i<m} t_i c_{m-i}.
    fn t_values(&self) -> Vec<BigInt> {
        let deg = self.degree();
        let mut t: Vec<BigInt> = Vec::with_capacity(deg);
        for m in 1..=deg {
            let mut v = BigInt::from(m as u64) * &self.coeffs[m];
            for i in 1..m {
                v -= &t[i - 1] * &self.coeffs[m - i];
            }
            t.push(v);
        }
        t
    }

    /// t_m for m beyond 2g via the linear recurrence the reciprocal roots
    /// satisfy: sum_{j=0}^{2g} c_j t_{m-j} = 0, seeded with t_0 = -2g.
    fn t_extended(&self, upto: u64) -> Vec<BigInt> {
        let deg = self.degree();
        let mut t = vec![BigInt::from(-(2 * self.genus as i64))];
        t.extend(self.t_values());
        for m in (deg as u64 + 1)..=upto {
            let mut v = BigInt::zero();
            for j in 1..=deg {
                v -= &self.coeffs[j] * &t[(m - j as u64) as usize];
            }
            t.push(v);
        }
        t.truncate((upto + 1) as usize);
        t
    }

    /// #X(F_{q^n}) = q^n + 1 + t_n, recovered by running the power-sum
    /// recurrence forward.
    pub fn count_at(&self, n: u64) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::ZeroN);
        }
        let t = self.t_extended(n);
        let value = self.q().pow(u32::try_from(n).expect("level too large")) + BigInt::one()
            + &t[n as usize];
        value
            .to_biguint()
            .ok_or_else(|| Error::NegativeCount { n, value: self.q().pow(n as u32) + BigInt::one() + &t[n as usize] })
    }

    /// The L-polynomial over F_{q^m}: reciprocal roots are the m-th
    /// powers of this polynomial's, rebuilt exactly through power sums.
    pub fn base_change(&self, m: u32) -> Result<LPolynomial> {
        if m == 0 {
            return Err(Error::ZeroBaseChange);
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let g = self.genus;
        if g == 0 {
            return Ok(LPolynomial {
                p: self.p,
                r: self.r * m,
                genus: 0,
                coeffs: vec![BigInt::one()],
            });
        }
        let t = self.t_extended(2 * g * m as u64);
        let picked: Vec<BigInt> = (1..=2 * g).map(|i| t[(i * m as u64) as usize].clone()).collect();
        rebuild_from_t(&picked, self.p, self.r * m)
    }

    /// Canonical ascending-power rendering, e.g.
    /// "1 + 3*T^2 - 162*T^8 + ... + 19683*T^18".
    pub fn canonical_text(&self) -> String {
        render_poly(&self.coeffs)
    }
}

/// Renders integer coefficients in the canonical ascending form shared by
/// the CLI, the cache and the golden tests.
pub fn render_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if i == 0 {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("{mag}*T^{i}"));
        }
    }
    if first {
        out.push('0');
    }
    out
}

/// Parses the canonical rendering back into coefficients.
pub fn parse_poly(text: &str) -> Result<Vec<BigInt>> {
    let bad = |m: &str| Error::BadPolynomialText(format!("{m}: {text}"));
    let text = text.trim();
    if text.is_empty() {
        return Err(bad("empty"));
    }
    let mut terms: Vec<(i32, String)> = Vec::new();
    let mut rest = text;
    let mut sign = 1i32;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r.trim_start();
    }
    loop {
        let end = rest.find(" + ").into_iter().chain(rest.find(" - ")).min();
        let (term, next_sign, tail) = match end {
            Some(pos) => {
                let t = &rest[..pos];
                let s = if rest[pos..].starts_with(" + ") { 1 } else { -1 };
                (t, Some(s), &rest[pos + 3..])
            }
            None => (rest, None, ""),
        };
        terms.push((sign, term.trim().to_string()));
        match next_sign {
            Some(s) => {
                sign = s;
                rest = tail;
            }
            None => break,
        }
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    for (s, term) in terms {
        let (mag, deg) = match term.split_once("*T^") {
            Some((m, d)) => (m.to_string(), d.parse::<usize>().map_err(|_| bad("bad exponent"))?),
            None => {
                if term == "0" {
                    continue;
                }
                (term.clone(), 0)
            }
        };
        let value: BigInt = mag.parse().map_err(|_| bad("bad coefficient"))?;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::zero());
        }
        coeffs[deg] = BigInt::from(s) * value;
    }
    if coeffs.is_empty() {
        coeffs.push(BigInt::zero());
    }
    Ok(coeffs)
}

fn rebuild_from_t(t: &[BigInt], p: u64, r: u32) -> Result<LPolynomial> {
    let deg = t.len();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(deg + 1);
    coeffs.push(BigInt::one());
    for m in 1..=deg {
        let mut acc = BigInt::zero();
        for i in 1..=m {
            acc += &t[i - 1] * &coeffs[m - i];
        }
        let (q, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(m as u64));
        if !rem.is_zero() {
            return Err(Error::NonIntegerCoefficient { index: m });
        }
        coeffs.push(q);
    }
    Ok(LPolynomial { p, r, genus: (deg / 2) as u64, coeffs })
}

/// Builds the L-polynomial over F_{p^r} from the 2g counts over
/// F_{p^r}, F_{p^{2r}}, ..., F_{p^{2gr}}. Each count must sit inside the
/// Hasse-Weil window and every recurrence division must be exact.
pub fn lpoly_from_counts(counts: &[BigUint], p: PrimeModulus, r: u32, genus: u64) -> Result<LPolynomial> {
    let expected = usize::try_from(2 * genus).expect("genus too large");
    if counts.len() != expected {
        return Err(Error::WrongCountLength { expected, got: counts.len() });
    }
    if genus == 0 {
        return Ok(LPolynomial { p: p.get(), r, genus: 0, coeffs: vec![BigInt::one()] });
    }
    let q = BigInt::from(p.get()).pow(r);
    let bound_base = BigInt::from(4u32) * BigInt::from(genus).pow(2);
    let mut t: Vec<BigInt> = Vec::with_capacity(expected);
    for (idx, a) in counts.iter().enumerate() {
        let m = idx as u32 + 1;
        let qm = q.pow(m);
        let tm = BigInt::from(a.clone()) - &qm - BigInt::one();
        if &tm * &tm > &bound_base * &qm {
            return Err(Error::HasseWeilViolated { n: idx + 1 });
        }
        t.push(tm);
    }
    rebuild_from_t(&t, p.get(), r)
}

/// The L-polynomial of a curve over F_p, from closed-form counts at
/// levels 1..2g. O(g^2) big-integer work, no enumeration.
pub fn lpoly_for_curve(spec: &CurveSpec) -> Result<LPolynomial> {
    let g = spec.genus();
    let counts: Vec<BigUint> = (1..=2 * g)
        .map(|n| formulas::formula_count(spec, n))
        .collect::<Result<_>>()?;
    lpoly_from_counts(&counts, spec.p(), 1, g)
}
