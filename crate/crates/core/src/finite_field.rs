//! Exact arithmetic in F_p and F_{p^n}.
//!
//! A [`FieldTower`] is a concrete model of F_{p^n} as F_p[x]/(m(x)) for a
//! deterministically chosen irreducible m. Construction is reproducible:
//! the modulus is the lexicographically smallest monic irreducible of
//! degree n, comparing coefficient vectors constant term first. Elements
//! are dense coefficient vectors of residues mod p; all operations take
//! the tower explicitly, and towers are immutable once built.

use crate::error::{Error, Result};

/// `base^exp mod m` for u64 inputs; `m` must be small enough that
/// `(m-1)^2` fits in u128 (always true here, p < 2^32 in practice).
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a, p - 2, p)
}

/// An odd prime, verified by trial division at construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::NotOddPrime(p));
        }
        let mut d = 3u64;
        while d.saturating_mul(d) <= p {
            if p % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 2;
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Legendre symbol (a/p), computed by Euler's criterion.
pub fn legendre(a: i64, p: PrimeModulus) -> i64 {
    let m = p.get();
    let r = a.rem_euclid(m as i64) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (m - 1) / 2, m) == 1 {
        1
    } else {
        -1
    }
}

// --- dense polynomial helpers over F_p (private) ---
//
// Polynomials are Vec<u64> with coeffs[i] the coefficient of x^i, always
// reduced mod p. The zero polynomial is the empty vector.

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(out)
}

/// Remainder of a modulo the monic polynomial m.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1);
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for i in 0..dm {
                let s = (lead * m[i]) % p;
                r[shift + i] = (r[shift + i] + p - s) % p;
            }
        }
        r.pop();
        r = poly_trim(r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        // reduce a mod b after making b monic
        let inv = inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| (c * inv) % p).collect();
        let r = poly_rem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

/// Distinct-degree test: m (monic, degree n) is irreducible iff it has no
/// irreducible factor of degree <= n/2, i.e. gcd(x^{p^i} - x, m) = 1 for
/// 1 <= i <= n/2.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 1..=(n / 2) {
        xp = poly_powmod(&xp, p, m, p);
        let mut diff = xp.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(&poly_trim(diff), m, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree n over F_p, comparing the
/// coefficient vectors (c_0, ..., c_{n-1}) lexicographically. For n >= 2
/// every polynomial with c_0 = 0 is divisible by x, so the enumeration
/// starts at (1, 0, ..., 0) without changing which polynomial is found.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut coeffs = vec![0u64; n];
    if n >= 2 {
        coeffs[0] = 1;
    }
    loop {
        let mut m = coeffs.clone();
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
        // lexicographic successor with c_0 most significant
        let mut i = n;
        loop {
            debug_assert!(i > 0, "ran out of candidate moduli");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// An element of F_{p^n}: a length-n coefficient vector, reduced mod p.
/// Arithmetic goes through the owning [`FieldTower`].
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A concrete model of F_{p^n} = F_p[x]/(m(x)).
#[derive(Clone, Debug)]
pub struct FieldTower {
    p: PrimeModulus,
    n: u32,
    modulus: Vec<u64>,
    /// reduction[i] = x^{n+i} mod m, for i in 0..n-1
    reduction: Vec<Vec<u64>>,
    /// frob[j] = coordinates of (x^j)^p, the columns of the Frobenius matrix
    frob: Vec<Vec<u64>>,
    /// trace[j] = Tr(x^j) in F_p
    trace: Vec<u64>,
}

impl FieldTower {
    /// Builds F_{p^n} with the deterministic smallest irreducible modulus.
    pub fn new(p: PrimeModulus, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let modulus = smallest_irreducible(p.get(), n);
        Self::from_modulus(p, n, modulus)
    }

    /// Builds F_{p^n} on a caller-supplied monic irreducible modulus
    /// (coefficients c_0..c_n with c_n = 1). All computed invariants are
    /// model-independent, which tests exploit by re-running on a second
    /// modulus.
    pub fn with_modulus(p: PrimeModulus, n: u32, modulus: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p.get()).collect();
        if modulus.len() != n as usize + 1 {
            return Err(Error::BadModulusDegree { degree: modulus.len().saturating_sub(1), expected: n });
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::NonMonicModulus);
        }
        if !is_irreducible(&modulus, p.get()) {
            return Err(Error::ReducibleModulus { p: p.get() });
        }
        Self::from_modulus(p, n, modulus)
    }

    fn from_modulus(p: PrimeModulus, n: u32, modulus: Vec<u64>) -> Result<Self> {
        let pp = p.get();
        let nn = n as usize;

        // x^{n+i} mod m for i = 0..n-1, by repeated shift-and-reduce;
        // products of two reduced elements never need more rows.
        let mut reduction: Vec<Vec<u64>> = Vec::new();
        if nn >= 2 {
            let mut row: Vec<u64> = modulus[..nn].iter().map(|&c| (pp - c % pp) % pp).collect();
            reduction.push(row.clone());
            for _ in 1..(nn - 1) {
                let carry = row[nn - 1];
                let mut next = vec![0u64; nn];
                next[1..].copy_from_slice(&row[..nn - 1]);
                if carry != 0 {
                    let base = reduction[0].clone();
                    for (i, &v) in base.iter().enumerate() {
                        next[i] = (next[i] + carry * v) % pp;
                    }
                }
                reduction.push(next.clone());
                row = next;
            }
        }

        let mut tower = FieldTower {
            p,
            n,
            modulus,
            reduction,
            frob: Vec::new(),
            trace: Vec::new(),
        };

        // Frobenius columns: (x^j)^p = (x^p)^j
        let xp = if nn == 1 {
            tower.one()
        } else {
            let e = FieldElement { coeffs: { let mut c = vec![0u64; nn]; c[1] = 1; c } };
            tower.pow(&e, pp as u128)
        };
        let mut cols = Vec::with_capacity(nn);
        let mut cur = tower.one();
        cols.push(cur.coeffs.clone());
        for _ in 1..nn {
            cur = tower.mul(&cur, &xp);
            cols.push(cur.coeffs.clone());
        }
        tower.frob = cols;

        // Tr(x^j) by the defining Frobenius-orbit sum; the result of each
        // sum must be a constant (checked in debug builds).
        let mut trace = Vec::with_capacity(nn);
        for j in 0..nn {
            let mut basis = vec![0u64; nn];
            basis[j] = 1;
            let e = FieldElement { coeffs: basis };
            let mut acc = e.clone();
            let mut cur = e;
            for _ in 1..nn {
                cur = tower.frobenius(&cur);
                for (a, c) in acc.coeffs.iter_mut().zip(cur.coeffs.iter()) {
                    *a = (*a + *c) % pp;
                }
            }
            debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace of a basis element is not in F_p");
            trace.push(acc.coeffs[0]);
        }
        tower.trace = trace;
        Ok(tower)
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Modulus coefficients c_0..c_n (monic, c_n = 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// p^n as u64, if it fits.
    pub fn checked_size(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.n {
            acc = acc.checked_mul(self.p.get())?;
        }
        Some(acc)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        coeffs[0] = c % self.p.get();
        FieldElement { coeffs }
    }

    /// The class of x, a generator of the tower as an F_p-algebra.
    pub fn generator(&self) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        if self.n == 1 {
            // x = -c_0 in F_p[x]/(x + c_0)
            coeffs[0] = (self.p.get() - self.modulus[0] % self.p.get()) % self.p.get();
        } else {
            coeffs[1] = 1;
        }
        FieldElement { coeffs }
    }

    pub fn element_from_coeffs(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.n as usize {
            return Err(Error::CoefficientLength { got: coeffs.len(), expected: self.n as usize });
        }
        let p = self.p.get();
        Ok(FieldElement { coeffs: coeffs.into_iter().map(|c| c % p).collect() })
    }

    /// The idx-th element in odometer order: idx written base p, with the
    /// constant coefficient as the least significant digit.
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        let p = self.p.get();
        let mut coeffs = vec![0u64; self.n as usize];
        for c in coeffs.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        FieldElement { coeffs }
    }

    /// Advances the coefficient odometer in place, constant coefficient
    /// fastest; wraps to zero after the last element.
    pub fn increment_odometer(&self, e: &mut FieldElement) {
        let p = self.p.get();
        for c in e.coeffs.iter_mut() {
            *c += 1;
            if *c < p {
                return;
            }
            *c = 0;
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p.get();
        FieldElement {
            coeffs: a.coeffs.iter().zip(b.coeffs.iter()).map(|(&x, &y)| (x + y) % p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p.get();
        FieldElement {
            coeffs: a.coeffs.iter().zip(b.coeffs.iter()).map(|(&x, &y)| (x + p - y) % p).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p.get();
        FieldElement { coeffs: a.coeffs.iter().map(|&x| (p - x) % p).collect() }
    }

    pub fn scalar_mul(&self, c: u64, a: &FieldElement) -> FieldElement {
        let p = self.p.get();
        let c = c % p;
        FieldElement { coeffs: a.coeffs.iter().map(|&x| (x * c) % p).collect() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p.get();
        let n = self.n as usize;
        debug_assert_eq!(a.coeffs.len(), n);
        debug_assert_eq!(b.coeffs.len(), n);
        let mut conv = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                conv[i + j] = (conv[i + j] + ai * bj) % p;
            }
        }
        let mut out: Vec<u64> = conv[..n].to_vec();
        for i in n..2 * n - 1 {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            for (k, &r) in self.reduction[i - n].iter().enumerate() {
                out[k] = (out[k] + c * r) % p;
            }
        }
        FieldElement { coeffs: out }
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u128) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// e -> e^p, as a linear map in the precomputed Frobenius columns.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.apply_matrix_cols(&self.frob, a)
    }

    /// e -> e^{p^k}.
    pub fn frobenius_pow(&self, a: &FieldElement, k: u32) -> FieldElement {
        let mut cur = a.clone();
        for _ in 0..(k % self.n.max(1)) {
            cur = self.frobenius(&cur);
        }
        cur
    }

    /// The matrix of e -> e^{p^k} as columns (column j = sigma^k(x^j)),
    /// with k reduced mod n since Frobenius has order n.
    pub fn frobenius_pow_cols(&self, k: u32) -> Vec<Vec<u64>> {
        let n = self.n as usize;
        let mut cols: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut c = vec![0u64; n];
                c[j] = 1;
                c
            })
            .collect();
        for _ in 0..(k % self.n) {
            cols = cols
                .iter()
                .map(|col| {
                    let e = FieldElement { coeffs: col.clone() };
                    self.frobenius(&e).coeffs
                })
                .collect();
        }
        cols
    }

    /// Applies a column-matrix to an element.
    pub fn apply_matrix_cols(&self, cols: &[Vec<u64>], a: &FieldElement) -> FieldElement {
        let p = self.p.get();
        let n = self.n as usize;
        let mut out = vec![0u64; n];
        for (j, &aj) in a.coeffs.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (i, &m) in cols[j].iter().enumerate() {
                out[i] = (out[i] + aj * m) % p;
            }
        }
        FieldElement { coeffs: out }
    }

    /// Absolute trace Tr: F_{p^n} -> F_p, as a dot product against the
    /// precomputed trace functional.
    pub fn abs_trace(&self, a: &FieldElement) -> u64 {
        let p = self.p.get();
        let mut acc = 0u64;
        for (&c, &t) in a.coeffs.iter().zip(self.trace.iter()) {
            acc = (acc + c * t) % p;
        }
        acc
    }

    /// Relative trace into the degree-d subfield:
    /// sum of e^{p^{di}} for i = 0..n/d-1. The result is returned as an
    /// element of this tower; it lies in the subfield fixed by sigma^d.
    pub fn rel_trace(&self, a: &FieldElement, d: u32) -> Result<FieldElement> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::NotASubfieldDegree { divisor: d, degree: self.n });
        }
        let p = self.p.get();
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..(self.n / d) {
            cur = self.frobenius_pow(&cur, d);
            for (x, y) in acc.coeffs.iter_mut().zip(cur.coeffs.iter()) {
                *x = (*x + *y) % p;
            }
        }
        Ok(acc)
    }

    /// Whether sigma^d fixes the element, i.e. it lies in F_{p^d}.
    pub fn is_in_subfield(&self, a: &FieldElement, d: u32) -> Result<bool> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::NotASubfieldDegree { divisor: d, degree: self.n });
        }
        Ok(self.frobenius_pow(a, d) == *a)
    }

    /// Absolute trace of an element of the degree-d subfield, computed as
    /// the d-term Frobenius-orbit sum. The result is a residue mod p.
    pub fn subfield_abs_trace(&self, a: &FieldElement, d: u32) -> Result<u64> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::NotASubfieldDegree { divisor: d, degree: self.n });
        }
        debug_assert!(self.is_in_subfield(a, d)?);
        let p = self.p.get();
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..d {
            cur = self.frobenius(&cur);
            for (x, y) in acc.coeffs.iter_mut().zip(cur.coeffs.iter()) {
                *x = (*x + *y) % p;
            }
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        Ok(acc.coeffs[0])
    }
}

/// Convenience wrapper matching the operation contract: builds F_{p^n}
/// with the deterministic modulus.
pub fn build_tower(p: PrimeModulus, n: u32) -> Result<FieldTower> {
    FieldTower::new(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p3() -> PrimeModulus {
        PrimeModulus::new(3).unwrap()
    }

    fn p5() -> PrimeModulus {
        PrimeModulus::new(5).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeModulus::new(3).is_ok());
        assert!(PrimeModulus::new(97).is_ok());
        assert!(matches!(PrimeModulus::new(2), Err(Error::NotOddPrime(2))));
        assert!(matches!(PrimeModulus::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(PrimeModulus::new(1), Err(Error::NotOddPrime(1))));
    }

    #[test]
    fn legendre_examples() {
        for p in [3u64, 5, 7, 11, 13] {
            let p = PrimeModulus::new(p).unwrap();
            assert_eq!(legendre(1, p), 1);
            // (-1/p) = +1 iff p = 1 mod 4
            let expect = if p.get() % 4 == 1 { 1 } else { -1 };
            assert_eq!(legendre(-1, p), expect);
        }
        assert_eq!(legendre(2, p3()), -1);
        assert_eq!(legendre(0, p5()), 0);
        assert_eq!(legendre(3, p5()), -1);
    }

    #[test]
    fn degree_one_tower_uses_smallest_constant() {
        let t = build_tower(p3(), 1).unwrap();
        // smallest monic linear is x itself
        assert_eq!(t.modulus(), &[0, 1]);
        assert_eq!(t.generator(), t.zero());
    }

    #[test]
    fn degree_two_modulus_has_no_root() {
        let t = build_tower(p3(), 2).unwrap();
        let m = t.modulus().to_vec();
        for r in 0..3u64 {
            let val = (m[0] + m[1] * r + r * r) % 3;
            assert_ne!(val, 0, "modulus has root {r} in F_3");
        }
    }

    #[test]
    fn quartic_over_f5_is_irreducible() {
        let t = build_tower(p5(), 4).unwrap();
        assert!(is_irreducible(t.modulus(), 5));
        // and the gcd test rejects a known reducible: (x^2+1)(x^2+2) over F_5
        let red = poly_mul(&[1, 0, 1], &[2, 0, 1], 5);
        assert!(!is_irreducible(&red, 5));
    }

    #[test]
    fn tower_construction_is_deterministic() {
        for (p, n) in [(3u64, 4u32), (5, 3), (7, 2)] {
            let p = PrimeModulus::new(p).unwrap();
            let a = build_tower(p, n).unwrap();
            let b = build_tower(p, n).unwrap();
            assert_eq!(a.modulus(), b.modulus());
        }
    }

    #[test]
    fn trace_of_zero_and_one() {
        let t = build_tower(p3(), 2).unwrap();
        assert_eq!(t.abs_trace(&t.zero()), 0);
        // Tr(1) = n mod p
        assert_eq!(t.abs_trace(&t.one()), 2);
        let t4 = build_tower(p5(), 4).unwrap();
        assert_eq!(t4.abs_trace(&t4.one()), 4);
    }

    #[test]
    fn trace_is_equidistributed_over_f81() {
        let t = build_tower(p3(), 4).unwrap();
        let mut buckets = [0u64; 3];
        for idx in 0..81 {
            let e = t.element_from_index(idx);
            buckets[t.abs_trace(&e) as usize] += 1;
        }
        // kernel of a surjective linear map has p^{n-1} elements
        assert_eq!(buckets, [27, 27, 27]);
    }

    #[test]
    fn trace_matches_frobenius_orbit_sum() {
        let t = build_tower(p5(), 3).unwrap();
        for idx in [0u64, 1, 7, 31, 99, 124] {
            let e = t.element_from_index(idx);
            let mut acc = e.clone();
            let mut cur = e.clone();
            for _ in 1..3 {
                cur = t.frobenius(&cur);
                acc = t.add(&acc, &cur);
            }
            assert!(acc.coeffs()[1..].iter().all(|&c| c == 0));
            assert_eq!(acc.coeffs()[0], t.abs_trace(&e));
        }
    }

    #[test]
    fn rel_trace_identity_and_constants() {
        let t = build_tower(p3(), 4).unwrap();
        let e = t.element_from_index(57);
        assert_eq!(t.rel_trace(&e, 4).unwrap(), e);
        // rel trace of 1 down to F_{p^2} is n/d = 2
        let r = t.rel_trace(&t.one(), 2).unwrap();
        assert_eq!(r, t.constant(2));
        assert!(matches!(t.rel_trace(&e, 3), Err(Error::NotASubfieldDegree { .. })));
    }

    #[test]
    fn rel_trace_lands_in_subfield_and_is_transitive() {
        let t = build_tower(p5(), 6).unwrap();
        // 100 deterministic samples
        for i in 0..100u64 {
            let e = t.element_from_index(i * 151 + 3);
            for d in [1u32, 2, 3] {
                let y = t.rel_trace(&e, d).unwrap();
                assert!(t.is_in_subfield(&y, d).unwrap());
                assert_eq!(t.subfield_abs_trace(&y, d).unwrap(), t.abs_trace(&e));
            }
        }
    }

    #[test]
    fn frobenius_closes_after_n_steps() {
        let t = build_tower(p3(), 4).unwrap();
        for idx in [1u64, 5, 44, 80] {
            let e = t.element_from_index(idx);
            assert_eq!(t.frobenius_pow(&e, 4), e);
            assert_eq!(t.pow(&e, 81), e);
        }
    }

    proptest! {
        #[test]
        fn frobenius_is_a_field_automorphism(a in 0u64..625, b in 0u64..625) {
            let t = build_tower(p5(), 4).unwrap();
            let x = t.element_from_index(a);
            let y = t.element_from_index(b);
            let lhs_add = t.frobenius(&t.add(&x, &y));
            let rhs_add = t.add(&t.frobenius(&x), &t.frobenius(&y));
            prop_assert_eq!(lhs_add, rhs_add);
            let lhs_mul = t.frobenius(&t.mul(&x, &y));
            let rhs_mul = t.mul(&t.frobenius(&x), &t.frobenius(&y));
            prop_assert_eq!(lhs_mul, rhs_mul);
            // and it really is the p-power map
            prop_assert_eq!(t.frobenius(&x), t.pow(&x, 5));
        }

        #[test]
        fn trace_is_linear(a in 0u64..2186, b in 0u64..2186, c in 0u64..7) {
            let t = build_tower(PrimeModulus::new(7).unwrap(), 4).unwrap();
            let x = t.element_from_index(a % 2401);
            let y = t.element_from_index(b % 2401);
            let lhs = t.abs_trace(&t.add(&t.scalar_mul(c, &x), &y));
            let rhs = (c * t.abs_trace(&x) + t.abs_trace(&y)) % 7;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
