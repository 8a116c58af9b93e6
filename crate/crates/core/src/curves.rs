//! The four Artin-Schreier families and exhaustive point counting.
//!
//! Every curve here is y^p - y = f(x) with
//!   B_0: f = x^2            C_0: f = x^2 + x
//!   B_k: f = x^{p^k+1}      C_k: f = x^{p^k+1} + a x   (a != 0)
//! and the count over F_{p^n} is p N + 1 where N is the number of x with
//! Tr(f(x)) = 0 (one point at infinity). Brute-force enumeration is the
//! ground-truth oracle the faster paths are validated against.

use num::bigint::BigUint;
use num::traits::One;
use num::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::finite_field::{FieldElement, FieldTower, PrimeModulus};

/// Default cap on brute-force enumeration, in trace evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CurveKind {
    B0,
    C0,
    Bk { k: u32 },
    Ck { k: u32, a: u64 },
}

/// One curve of one family: the parameters (p, k, a) that identify every
/// computation in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct CurveSpec {
    p: PrimeModulus,
    kind: CurveKind,
    genus: u64,
}

impl CurveSpec {
    pub fn b0(p: PrimeModulus) -> Self {
        CurveSpec { p, kind: CurveKind::B0, genus: (p.get() - 1) / 2 }
    }

    pub fn c0(p: PrimeModulus) -> Self {
        CurveSpec { p, kind: CurveKind::C0, genus: (p.get() - 1) / 2 }
    }

    pub fn bk(p: PrimeModulus, k: u32) -> Result<Self> {
        let genus = Self::higher_genus(p, k, "B")?;
        Ok(CurveSpec { p, kind: CurveKind::Bk { k }, genus })
    }

    /// C_{k,a} with the spec's default a = 1 available via [`CurveSpec::ck1`].
    pub fn ck(p: PrimeModulus, k: u32, a: u64) -> Result<Self> {
        if a == 0 || a >= p.get() {
            return Err(Error::BadCoefficientA { a, p: p.get() });
        }
        let genus = Self::higher_genus(p, k, "C")?;
        Ok(CurveSpec { p, kind: CurveKind::Ck { k, a }, genus })
    }

    pub fn ck1(p: PrimeModulus, k: u32) -> Result<Self> {
        Self::ck(p, k, 1)
    }

    fn higher_genus(p: PrimeModulus, k: u32, family: &'static str) -> Result<u64> {
        if k == 0 {
            return Err(Error::ZeroK { family });
        }
        let mut pk: u64 = 1;
        for _ in 0..k {
            pk = pk.checked_mul(p.get()).ok_or(Error::GenusOverflow { p: p.get(), k })?;
        }
        pk.checked_mul((p.get() - 1) / 2).ok_or(Error::GenusOverflow { p: p.get(), k })
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Genus: (p-1)/2 for B_0 and C_0, p^k (p-1)/2 for B_k and C_k.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// k for the B_k / C_k families, None for the base families.
    pub fn k(&self) -> Option<u32> {
        match self.kind {
            CurveKind::B0 | CurveKind::C0 => None,
            CurveKind::Bk { k } | CurveKind::Ck { k, .. } => Some(k),
        }
    }

    /// The linear coefficient a for C_k, None elsewhere.
    pub fn a(&self) -> Option<u64> {
        match self.kind {
            CurveKind::Ck { a, .. } => Some(a),
            _ => None,
        }
    }

    pub fn family_tag(&self) -> &'static str {
        match self.kind {
            CurveKind::B0 => "B0",
            CurveKind::C0 => "C0",
            CurveKind::Bk { .. } => "B",
            CurveKind::Ck { .. } => "C",
        }
    }
}

impl std::fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            CurveKind::B0 => write!(f, "B0(p={})", self.p),
            CurveKind::C0 => write!(f, "C0(p={})", self.p),
            CurveKind::Bk { k } => write!(f, "B_{}(p={})", k, self.p),
            CurveKind::Ck { k, a } => write!(f, "C_{}(p={}, a={})", k, self.p, a),
        }
    }
}

/// A verified point count over F_{p^n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub spec: CurveSpec,
    pub n: u32,
    pub count: BigUint,
}

impl PointCount {
    /// Checks count = 1 mod p and the Hasse-Weil window
    /// |count - (p^n + 1)| <= 2g p^{n/2}, squared to stay in integers.
    pub fn validate(&self) -> Result<()> {
        let p = BigUint::from(self.spec.p().get());
        if &self.count % &p != BigUint::one() {
            return Err(Error::Internal(format!(
                "count {} of {} over F_p^{} is not 1 mod p",
                self.count, self.spec, self.n
            )));
        }
        let pn = p.pow(self.n);
        let expected = BigInt::from(pn) + BigInt::one();
        let t = BigInt::from(self.count.clone()) - &expected;
        let bound = BigInt::from(4u32)
            * BigInt::from(self.spec.genus()).pow(2)
            * BigInt::from(self.spec.p().get()).pow(self.n);
        if &t * &t > bound {
            return Err(Error::Internal(format!(
                "count {} of {} over F_p^{} violates Hasse-Weil",
                self.count, self.spec, self.n
            )));
        }
        Ok(())
    }
}

/// Evaluates the family's right-hand side f(x) in the given tower.
/// For B_k and C_k, x^{p^k+1} is k Frobenius applications followed by
/// one multiplication.
pub fn rhs_eval(spec: &CurveSpec, tower: &FieldTower, x: &FieldElement) -> Result<FieldElement> {
    if tower.p() != spec.p() {
        return Err(Error::CharacteristicMismatch { spec_p: spec.p().get(), tower_p: tower.p().get() });
    }
    Ok(match spec.kind() {
        CurveKind::B0 => tower.mul(x, x),
        CurveKind::C0 => tower.add(&tower.mul(x, x), x),
        CurveKind::Bk { k } => tower.mul(&tower.frobenius_pow(x, k), x),
        CurveKind::Ck { k, a } => {
            let main = tower.mul(&tower.frobenius_pow(x, k), x);
            tower.add(&main, &tower.scalar_mul(a, x))
        }
    })
}

/// Number of x in a contiguous odometer range with Tr(f(x)) = 0.
/// The fold is pure, so disjoint ranges combine by addition.
fn count_range(spec: &CurveSpec, tower: &FieldTower, frob_k: Option<&[Vec<u64>]>, lo: u64, hi: u64) -> u64 {
    let mut hits = 0u64;
    let mut x = tower.element_from_index(lo);
    for idx in lo..hi {
        let f = match spec.kind() {
            CurveKind::B0 => tower.mul(&x, &x),
            CurveKind::C0 => tower.add(&tower.mul(&x, &x), &x),
            CurveKind::Bk { .. } => {
                let xk = tower.apply_matrix_cols(frob_k.unwrap(), &x);
                tower.mul(&xk, &x)
            }
            CurveKind::Ck { a, .. } => {
                let xk = tower.apply_matrix_cols(frob_k.unwrap(), &x);
                tower.add(&tower.mul(&xk, &x), &tower.scalar_mul(a, &x))
            }
        };
        if tower.abs_trace(&f) == 0 {
            hits += 1;
        }
        if idx + 1 < hi {
            tower.increment_odometer(&mut x);
        }
    }
    hits
}

/// Exhaustive count of F_{p^n}-rational points: p N + 1 with
/// N = #{x : Tr(f(x)) = 0}. Refuses (rather than truncates) when p^n
/// exceeds the budget; use the rank method or the closed form instead.
pub fn count_points_bruteforce(spec: &CurveSpec, n: u32, budget: u64) -> Result<PointCount> {
    let tower = FieldTower::new(spec.p(), n)?;
    let size = match tower.checked_size() {
        Some(s) if s <= budget => s,
        other => {
            let needed = other.map(u128::from).unwrap_or_else(|| {
                let mut acc: u128 = 1;
                for _ in 0..n {
                    acc = acc.saturating_mul(spec.p().get() as u128);
                }
                acc
            });
            return Err(Error::BudgetExceeded { p: spec.p().get(), n, needed, budget });
        }
    };
    let frob_k = spec.k().map(|k| tower.frobenius_pow_cols(k));

    const CHUNK: u64 = 1 << 14;
    let chunks: Vec<(u64, u64)> = (0..size)
        .step_by(CHUNK as usize)
        .map(|lo| (lo, (lo + CHUNK).min(size)))
        .collect();
    let hits: u64 = chunks
        .par_iter()
        .map(|&(lo, hi)| count_range(spec, &tower, frob_k.as_deref(), lo, hi))
        .sum();

    let count = BigUint::from(spec.p().get()) * BigUint::from(hits) + BigUint::one();
    let pc = PointCount { spec: *spec, n, count };
    debug_assert!(pc.validate().is_ok());
    Ok(pc)
}

/// Single-threaded reference fold over the whole range; used to check
/// that the parallel partition sums to the same result.
pub fn count_points_bruteforce_serial(spec: &CurveSpec, n: u32, budget: u64) -> Result<PointCount> {
    let tower = FieldTower::new(spec.p(), n)?;
    let size = tower
        .checked_size()
        .filter(|&s| s <= budget)
        .ok_or(Error::BudgetExceeded { p: spec.p().get(), n, needed: 0, budget })?;
    let frob_k = spec.k().map(|k| tower.frobenius_pow_cols(k));
    let hits = count_range(spec, &tower, frob_k.as_deref(), 0, size);
    let count = BigUint::from(spec.p().get()) * BigUint::from(hits) + BigUint::one();
    Ok(PointCount { spec: *spec, n, count })
}

/// Counts over a caller-supplied tower (for checking independence from
/// the modulus choice).
pub fn count_points_bruteforce_in_tower(spec: &CurveSpec, tower: &FieldTower, budget: u64) -> Result<PointCount> {
    if tower.p() != spec.p() {
        return Err(Error::CharacteristicMismatch { spec_p: spec.p().get(), tower_p: tower.p().get() });
    }
    let size = tower
        .checked_size()
        .filter(|&s| s <= budget)
        .ok_or(Error::BudgetExceeded { p: spec.p().get(), n: tower.degree(), needed: 0, budget })?;
    let frob_k = spec.k().map(|k| tower.frobenius_pow_cols(k));
    let hits = count_range(spec, tower, frob_k.as_deref(), 0, size);
    let count = BigUint::from(spec.p().get()) * BigUint::from(hits) + BigUint::one();
    Ok(PointCount { spec: *spec, n: tower.degree(), count })
}

/// True iff the brute-force count of C_{k,a} over F_{p^n} is the same for
/// every a in F_p^x.
pub fn verify_a_invariance(p: PrimeModulus, k: u32, n: u32, budget: u64) -> Result<bool> {
    let mut first: Option<BigUint> = None;
    for a in 1..p.get() {
        let spec = CurveSpec::ck(p, k, a)?;
        let pc = count_points_bruteforce(&spec, n, budget)?;
        match &first {
            None => first = Some(pc.count),
            Some(c) if *c == pc.count => {}
            Some(_) => return Ok(false),
        }
    }
    Ok(true)
}
