//! Exact arithmetic in Q(zeta_m) = Q[x]/Phi_m(x), the substrate for the
//! inverse DFT over roots of unity. sqrt(p) is embedded through the
//! quadratic Gauss sum, so every spectrum computation stays in exact
//! rationals; no floating point touches the acceptance path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finite_field::{legendre, PrimeModulus};

fn int_poly_trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
    a
}

/// Exact division by a monic divisor; panics if the division leaves a
/// remainder (cyclotomic factorizations never do).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let num = int_poly_trim(num.to_vec());
    let den = int_poly_trim(den.to_vec());
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let dd = den.len() - 1;
    let mut rem = num;
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - dd;
        quot[shift] = lead.clone();
        for i in 0..=dd {
            let delta = &lead * &den[i];
            rem[shift + i] -= delta;
        }
        rem = int_poly_trim(rem);
    }
    assert!(rem.is_empty(), "non-exact cyclotomic division");
    quot
}

/// Phi_m as a monic integer polynomial, by dividing x^m - 1 by the
/// cyclotomic polynomials of the proper divisors.
pub(crate) fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::one();
        let mut phi = num;
        for (e, poly) in &table {
            if d % e == 0 {
                phi = int_poly_div_exact(&phi, poly);
            }
        }
        table.push((d, phi));
    }
    table.pop().unwrap().1
}

/// An element of Q(zeta_m), reduced mod Phi_m: a rational coefficient
/// vector of length phi(m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CycElem {
    pub(crate) coeffs: Vec<BigRational>,
}

impl CycElem {
    /// Some(value) iff the element is a rational number.
    pub(crate) fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// Q[x]/Phi_m(x) with a precomputed table of the powers of zeta.
pub(crate) struct CyclotomicField {
    pub(crate) m: u64,
    phi: usize,
    modulus: Vec<BigInt>,
    /// powers[e] = zeta^e reduced mod Phi_m, for e in 0..m
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    pub(crate) fn new(m: u64) -> Self {
        assert!(m >= 1);
        let modulus = cyclotomic_polynomial(m);
        let phi = modulus.len() - 1;
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::one()];
        for _ in 0..m {
            let mut padded = cur.clone();
            padded.resize(phi, BigInt::zero());
            powers.push(padded);
            // multiply by x and reduce by the monic modulus
            let mut next = vec![BigInt::zero()];
            next.extend(cur.iter().cloned());
            if next.len() > phi {
                let lead = next.pop().unwrap();
                for i in 0..phi {
                    let delta = &lead * &modulus[i];
                    next[i] -= delta;
                }
            }
            cur = next;
        }
        CyclotomicField { m, phi, modulus, powers }
    }

    pub(crate) fn zero(&self) -> CycElem {
        CycElem { coeffs: vec![BigRational::zero(); self.phi] }
    }

    pub(crate) fn from_rational(&self, r: BigRational) -> CycElem {
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }

    pub(crate) fn from_integer(&self, v: i64) -> CycElem {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// zeta^e for any integer exponent e (reduced mod m).
    pub(crate) fn zeta_pow(&self, e: i64) -> CycElem {
        let idx = e.rem_euclid(self.m as i64) as usize;
        CycElem {
            coeffs: self.powers[idx]
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub(crate) fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub(crate) fn scale(&self, a: &CycElem, f: &BigRational) -> CycElem {
        CycElem { coeffs: a.coeffs.iter().map(|x| x * f).collect() }
    }

    pub(crate) fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let mut conv = vec![BigRational::zero(); 2 * self.phi - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                conv[i + j] += ai * bj;
            }
        }
        // reduce by the monic modulus
        for i in (self.phi..conv.len()).rev() {
            if conv[i].is_zero() {
                continue;
            }
            let lead = conv[i].clone();
            for (k, mc) in self.modulus[..self.phi].iter().enumerate() {
                let delta = &lead * &BigRational::from_integer(mc.clone());
                conv[i - self.phi + k] -= delta;
            }
            conv[i] = BigRational::zero();
        }
        conv.truncate(self.phi);
        CycElem { coeffs: conv }
    }

    /// sqrt(p) via the quadratic Gauss sum g = sum_t (t/p) zeta_p^t:
    /// g itself for p = 1 mod 4, and -i g for p = 3 mod 4 (g = i sqrt(p)
    /// there). Requires 4p | m so that both zeta_p and i live in the field.
    pub(crate) fn sqrt_p(&self, p: PrimeModulus) -> Result<CycElem> {
        let pp = p.get();
        if self.m % pp != 0 || self.m % 4 != 0 {
            return Err(Error::Internal(format!(
                "cyclotomic order {} does not contain sqrt({})",
                self.m, pp
            )));
        }
        let step = (self.m / pp) as i64;
        let mut g = self.zero();
        for t in 1..pp {
            let term = self.zeta_pow(step * t as i64);
            match legendre(t as i64, p) {
                1 => g = self.add(&g, &term),
                -1 => g = self.sub(&g, &term),
                _ => unreachable!(),
            }
        }
        if pp % 4 == 1 {
            Ok(g)
        } else {
            // -i = zeta^{3m/4}
            let minus_i = self.zeta_pow((3 * self.m / 4) as i64);
            Ok(self.mul(&minus_i, &g))
        }
    }
}
