//! Closed-form normalized point-count deficits for all four families,
//! plus the supersingular reduction rule. Counting any extension level is
//! O(1) here; brute force and the quadratic-form rank method exist to
//! validate these formulas, not to replace them.
//!
//! The deficit of X at level n is -p^{-n/2} (#X(F_{p^n}) - p^n - 1),
//! always an element of Z + Z sqrt(p) for these families: an integer at
//! even n and an integer multiple of sqrt(p) at odd n.

use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint};
use num::traits::One;
use num_integer::Integer;

use crate::curves::{CurveKind, CurveSpec};
use crate::error::{Error, Result};
use crate::finite_field::{legendre, PrimeModulus};

/// u + v sqrt(p), with at most one of u, v nonzero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Deficit {
    pub u: i64,
    pub v: i64,
    pub p: u64,
}

impl Deficit {
    pub fn integer(u: i64, p: PrimeModulus) -> Self {
        Deficit { u, v: 0, p: p.get() }
    }

    pub fn sqrtp(v: i64, p: PrimeModulus) -> Self {
        Deficit { u: 0, v, p: p.get() }
    }

    pub fn zero(p: PrimeModulus) -> Self {
        Deficit { u: 0, v: 0, p: p.get() }
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.v == 0
    }

    fn times_sign(self, s: i64) -> Self {
        debug_assert!(s == 1 || s == -1);
        Deficit { u: self.u * s, v: self.v * s, p: self.p }
    }
}

impl std::fmt::Display for Deficit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.v == 0 {
            write!(f, "{}", self.u)
        } else {
            match self.v {
                1 => write!(f, "sqrt({})", self.p),
                -1 => write!(f, "-sqrt({})", self.p),
                v => write!(f, "{}*sqrt({})", v, self.p),
            }
        }
    }
}

/// Which branch of a family's case table fired, for table output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeficitCase {
    /// The governing gcd: (n,4) for B0, (n,4p) for C0, (n,4k) for B_k,
    /// (n,4l) for C_k.
    pub d: u64,
    pub label: &'static str,
}

/// (-1)^{n(p-1)/4} for even n; n(p-1) is divisible by 4 there.
fn quarter_sign(n: u64, p: u64) -> i64 {
    debug_assert_eq!(n % 2, 0);
    if (n % 8) * ((p - 1) % 8) % 8 == 4 {
        -1
    } else {
        1
    }
}

/// (-1)^{(n-1)/2} for odd n.
fn half_sign(n: u64) -> i64 {
    debug_assert_eq!(n % 2, 1);
    if ((n - 1) / 2) % 2 == 1 {
        -1
    } else {
        1
    }
}

pub fn deficit_b0(p: PrimeModulus, n: u64) -> Deficit {
    deficit_b0_with_case(p, n).0
}

pub fn deficit_b0_with_case(p: PrimeModulus, n: u64) -> (Deficit, DeficitCase) {
    let pp = p.get();
    if pp % 4 == 1 {
        let d = n.gcd(&4);
        if n % 2 == 1 {
            (Deficit::zero(p), DeficitCase { d, label: "n odd" })
        } else {
            (Deficit::integer(pp as i64 - 1, p), DeficitCase { d, label: "n even" })
        }
    } else {
        match n.gcd(&4) {
            1 | 3 => (Deficit::zero(p), DeficitCase { d: 1, label: "(4,n)=1" }),
            2 => (Deficit::integer(-(pp as i64 - 1), p), DeficitCase { d: 2, label: "(4,n)=2" }),
            _ => (Deficit::integer(pp as i64 - 1, p), DeficitCase { d: 4, label: "(4,n)=4" }),
        }
    }
}

pub fn deficit_c0(p: PrimeModulus, n: u64) -> Deficit {
    deficit_c0_with_case(p, n).0
}

pub fn deficit_c0_with_case(p: PrimeModulus, n: u64) -> (Deficit, DeficitCase) {
    let pp = p.get();
    let pi = pp as i64;
    if pp % 4 == 1 {
        let d = n.gcd(&(2 * pp));
        let c = if d == 1 {
            (Deficit::sqrtp(-legendre((n % pp) as i64, p), p), "(n,2p)=1")
        } else if d == 2 {
            (Deficit::integer(-1, p), "(n,2p)=2")
        } else if d == pp {
            (Deficit::zero(p), "(n,2p)=p")
        } else {
            (Deficit::integer(pi - 1, p), "(n,2p)=2p")
        };
        (c.0, DeficitCase { d, label: c.1 })
    } else {
        let d = n.gcd(&(4 * pp));
        let c = if d == 1 {
            let arg = half_sign(n) * (n % pp) as i64;
            (Deficit::sqrtp(-legendre(arg, p), p), "(n,4p)=1")
        } else if d == 2 {
            (Deficit::integer(1, p), "(n,4p)=2")
        } else if d == 4 {
            (Deficit::integer(-1, p), "(n,4p)=4")
        } else if d == pp {
            (Deficit::zero(p), "(n,4p)=p")
        } else if d == 2 * pp {
            (Deficit::integer(-(pi - 1), p), "(n,4p)=2p")
        } else {
            (Deficit::integer(pi - 1, p), "(n,4p)=4p")
        };
        (c.0, DeficitCase { d, label: c.1 })
    }
}

fn pow_i64(p: u64, e: u64) -> i64 {
    let mut acc: i64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as i64).expect("deficit magnitude overflows i64");
    }
    acc
}

pub fn deficit_bk(p: PrimeModulus, k: u32, n: u64) -> Deficit {
    deficit_bk_with_case(p, k, n).0
}

pub fn deficit_bk_with_case(p: PrimeModulus, k: u32, n: u64) -> (Deficit, DeficitCase) {
    let pp = p.get();
    let pi = pp as i64;
    let k = k as u64;
    let d = n.gcd(&(4 * k));
    if k % d == 0 {
        if d % 2 == 1 {
            (Deficit::zero(p), DeficitCase { d, label: "d | k, d odd" })
        } else {
            (
                Deficit::integer(quarter_sign(n, pp) * (pi - 1), p),
                DeficitCase { d, label: "d | k, d even" },
            )
        }
    } else if d % 2 == 0 && k % (d / 2) == 0 {
        // count here is p^d + 1 - (p-1) p^{d/2}, so the deficit is +(p-1)
        (Deficit::integer(pi - 1, p), DeficitCase { d, label: "d !| k, d/2 | k" })
    } else {
        let e = k.gcd(&n);
        (
            Deficit::integer((pi - 1) * pow_i64(pp, e), p),
            DeficitCase { d, label: "d !| 2k, d | 4k" },
        )
    }
}

pub fn deficit_ck(p: PrimeModulus, k: u32, n: u64) -> Deficit {
    deficit_ck_with_case(p, k, n).0
}

pub fn deficit_ck_with_case(p: PrimeModulus, k: u32, n: u64) -> (Deficit, DeficitCase) {
    let pp = p.get();
    let pi = pp as i64;
    let k = k as u64;
    let l = if k % pp == 0 { k } else { k * pp };
    let d = n.gcd(&(4 * l));
    let p_divides_n = n % pp == 0;
    if l % d == 0 {
        if n % 2 == 1 {
            if p_divides_n {
                (Deficit::zero(p), DeficitCase { d, label: "d | l, n odd, p | n" })
            } else {
                let arg = half_sign(n) * (n % pp) as i64;
                (
                    Deficit::sqrtp(-legendre(arg, p), p),
                    DeficitCase { d, label: "d | l, n odd, p !| n" },
                )
            }
        } else if p_divides_n {
            (
                Deficit::integer(quarter_sign(n, pp) * (pi - 1), p),
                DeficitCase { d, label: "d | l, n even, p | n" },
            )
        } else {
            (
                Deficit::integer(-quarter_sign(n, pp), p),
                DeficitCase { d, label: "d | l, n even, p !| n" },
            )
        }
    } else if d % 2 == 0 && l % (d / 2) == 0 {
        if p_divides_n {
            (Deficit::integer(pi - 1, p), DeficitCase { d, label: "d !| l, d/2 | l, p | n" })
        } else {
            (Deficit::integer(-1, p), DeficitCase { d, label: "d !| l, d/2 | l, p !| n" })
        }
    } else {
        let e = k.gcd(&n);
        if p_divides_n {
            (
                Deficit::integer((pi - 1) * pow_i64(pp, e), p),
                DeficitCase { d, label: "d !| 2l, d | 4l, p | n" },
            )
        } else {
            (
                Deficit::integer(-pow_i64(pp, e), p),
                DeficitCase { d, label: "d !| 2l, d | 4l, p !| n" },
            )
        }
    }
}

/// Closed-form deficit for any family at level n >= 1.
pub fn deficit(spec: &CurveSpec, n: u64) -> Result<Deficit> {
    Ok(deficit_with_case(spec, n)?.0)
}

pub fn deficit_with_case(spec: &CurveSpec, n: u64) -> Result<(Deficit, DeficitCase)> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    Ok(match spec.kind() {
        CurveKind::B0 => deficit_b0_with_case(spec.p(), n),
        CurveKind::C0 => deficit_c0_with_case(spec.p(), n),
        CurveKind::Bk { k } => deficit_bk_with_case(spec.p(), k, n),
        // the count of C_{k,a} does not depend on a
        CurveKind::Ck { k, .. } => deficit_ck_with_case(spec.p(), k, n),
    })
}

/// Recovers #X(F_{p^n}) = p^n + 1 - p^{n/2} deficit. The deficit must be
/// an integer at even n and a sqrt(p)-multiple at odd n; anything else is
/// a formula bug, not an input condition.
pub fn count_from_deficit(d: &Deficit, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    let p = BigInt::from(d.p);
    let base = p.pow(u32::try_from(n).expect("n too large")) + BigInt::one();
    let correction = if n % 2 == 0 {
        if d.v != 0 {
            return Err(Error::DeficitParity { u: d.u, v: d.v, n, reason: "sqrt(p) part at even level" });
        }
        BigInt::from(d.u) * BigInt::from(d.p).pow(u32::try_from(n / 2).unwrap())
    } else {
        if d.u != 0 {
            return Err(Error::DeficitParity { u: d.u, v: d.v, n, reason: "integer part at odd level" });
        }
        BigInt::from(d.v) * BigInt::from(d.p).pow(u32::try_from((n + 1) / 2).unwrap())
    };
    let count = base - correction;
    count
        .to_biguint()
        .ok_or_else(|| Error::Internal(format!("negative point count at level {n}")))
}

/// Closed-form count for any family: O(1) in the extension degree.
pub fn formula_count(spec: &CurveSpec, n: u64) -> Result<BigUint> {
    count_from_deficit(&deficit(spec, n)?, n)
}

/// The reduction rule for supersingular curves whose Weil numbers are
/// sqrt(p) times s-th roots of unity: with m = gcd(n, s) and n = m t,
/// the deficit at n is the deficit at m, multiplied by the Legendre
/// symbol ((-1)^{(t-1)/2} t / p) when m is odd and p does not divide t.
pub fn reduce_supersingular(base: &BTreeMap<u64, Deficit>, s: u64, n: u64) -> Result<Deficit> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    let m = n.gcd(&s);
    let t = n / m;
    let d = *base.get(&m).ok_or(Error::MissingBaseDeficit { m, s })?;
    let p = PrimeModulus::new(d.p)?;
    if m % 2 == 0 || t % d.p == 0 {
        Ok(d)
    } else {
        let arg = half_sign(t) * (t % d.p) as i64;
        Ok(d.times_sign(legendre(arg, p)))
    }
}

/// Deficits at every divisor of s, the base data for the reduction rule.
pub fn base_deficits(spec: &CurveSpec, s: u64) -> Result<BTreeMap<u64, Deficit>> {
    let mut map = BTreeMap::new();
    for m in 1..=s {
        if s % m == 0 {
            map.insert(m, deficit(spec, m)?);
        }
    }
    Ok(map)
}

/// Minimal: every normalized Weil number is +1 at level n, i.e. the
/// deficit equals 2g. Only possible at even n.
pub fn is_minimal(n: u64, genus: u64, d: &Deficit) -> bool {
    n % 2 == 0 && d.v == 0 && d.u == 2 * genus as i64
}

/// Maximal: every normalized Weil number is -1 at level n (deficit -2g).
pub fn is_maximal(n: u64, genus: u64, d: &Deficit) -> bool {
    n % 2 == 0 && d.v == 0 && d.u == -(2 * genus as i64)
}
