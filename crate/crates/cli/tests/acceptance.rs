//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//! Every tolerance is pinned in code; all checks are bit-exact.

use std::process::Command;
use std::time::{Duration, Instant};

use num::bigint::{BigInt, BigUint};
use num::traits::One;

use aszeta::{
    base_deficits, count_from_deficit, count_points_bruteforce, deficit, expand_spectrum,
    formula_count, lpoly_divides, lpoly_for_curve, period, rank_method_count, reduce_supersingular,
    spectrum, spectrum_difference_nonneg, sqrtp_multiplicity, verify_a_invariance, CurveSpec,
    PrimeModulus, DEFAULT_BUDGET,
};

fn p(v: u64) -> PrimeModulus {
    PrimeModulus::new(v).unwrap()
}

/// B0, C0, B_k, C_k for k = 1..k_max over F_p.
fn family_set(pv: u64, k_max: u32) -> Vec<CurveSpec> {
    let pm = p(pv);
    let mut specs = vec![CurveSpec::b0(pm), CurveSpec::c0(pm)];
    for k in 1..=k_max {
        specs.push(CurveSpec::bk(pm, k).unwrap());
        specs.push(CurveSpec::ck1(pm, k).unwrap());
    }
    specs
}

fn golden_b2_f3() -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); 19];
    c[0] = 1.into();
    c[2] = 3.into();
    c[8] = (-162).into();
    c[10] = (-486).into();
    c[16] = 6561.into();
    c[18] = 19683.into();
    c
}

fn golden_base_changed_f27() -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); 19];
    c[0] = 1.into();
    c[2] = 27.into();
    c[8] = (-1062882i64).into();
    c[10] = (-28697814i64).into();
    c[16] = 282429536481i64.into();
    c[18] = 7625597484987i64.into();
    c
}

/// The published degree-18 polynomial for C_2 over F_3, as printed.
fn published_c2_f3() -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); 19];
    c[0] = 1.into();
    c[1] = (-3).into();
    c[2] = 3.into();
    c[8] = 81.into();
    c[9] = (-243).into();
    c[10] = 243.into();
    c[16] = 6561.into();
    c[17] = (-19683).into();
    c[18] = 19683.into();
    c
}

#[test]
fn criterion_01_golden_lpoly_b2_f3() {
    let start = Instant::now();
    // library path
    let l = lpoly_for_curve(&CurveSpec::bk(p(3), 2).unwrap()).unwrap();
    assert_eq!(l.coeffs(), golden_b2_f3().as_slice());
    // CLI path, bit-exact canonical text
    let out = Command::new(env!("CARGO_BIN_EXE_aszeta"))
        .args(["lpoly", "--family", "B", "--p", "3", "--k", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "1 + 3*T^2 - 162*T^8 - 486*T^10 + 6561*T^16 + 19683*T^18"
    );
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget 5 s");
    println!("ACCEPTANCE 1: PASS - golden L(B_2/F_3) bit-exact in {elapsed:?} (< 5 s)");
}

#[test]
fn criterion_02_base_change_golden() {
    let start = Instant::now();
    let golden = golden_base_changed_f27();
    let b2 = lpoly_for_curve(&CurveSpec::bk(p(3), 2).unwrap()).unwrap();
    assert_eq!(b2.base_change(3).unwrap().coeffs(), golden.as_slice());
    let c2 = lpoly_for_curve(&CurveSpec::ck1(p(3), 2).unwrap()).unwrap();
    assert_eq!(c2.base_change(3).unwrap().coeffs(), golden.as_slice());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget 5 s");
    println!("ACCEPTANCE 2: PASS - cubed-roots polynomial of both B_2 and C_2 over F_27 in {elapsed:?} (< 5 s)");
}

#[test]
fn criterion_03_c2_even_coefficients_and_sign_flip() {
    let computed = lpoly_for_curve(&CurveSpec::ck1(p(3), 2).unwrap()).unwrap();
    let published = published_c2_f3();
    let mut odd_flips = 0;
    for (i, (got, printed)) in computed.coeffs().iter().zip(&published).enumerate() {
        if i % 2 == 0 {
            assert_eq!(got, printed, "even coefficient c_{i} must match the published value");
        } else {
            // odd coefficients match only after the global flip T -> -T
            assert_eq!(got, &-printed, "odd coefficient c_{i} must match up to sign");
            if got != printed {
                odd_flips += 1;
            }
        }
    }
    assert!(odd_flips > 0, "the documented sign discrepancy must actually be observed");
    // the computed polynomial is the internally consistent one: its c_1
    // is forced by the brute-force count over F_3
    let brute = count_points_bruteforce(&CurveSpec::ck1(p(3), 2).unwrap(), 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(brute.count, BigUint::from(7u32));
    assert_eq!(computed.coeffs()[1], BigInt::from(3));
    assert!(computed.validate().is_empty());
    println!(
        "ACCEPTANCE 3: PASS - L(C_2/F_3) matches the published even coefficients; \
         {odd_flips} odd coefficients carry the documented global T -> -T sign discrepancy"
    );
}

#[test]
fn criterion_04_three_way_oracle_equivalence() {
    let start = Instant::now();
    let mut comparisons = 0u64;
    for pv in [3u64, 5, 7] {
        for spec in family_set(pv, 2) {
            // brute force while p^n <= 10^6
            let mut n = 1u32;
            let mut size = pv;
            while size <= 1_000_000 {
                let brute = count_points_bruteforce(&spec, n, DEFAULT_BUDGET).unwrap().count;
                let rank = rank_method_count(&spec, n).unwrap();
                let formula = formula_count(&spec, n as u64).unwrap();
                assert_eq!(brute, rank, "{spec} n={n}: brute vs rank");
                assert_eq!(brute, formula, "{spec} n={n}: brute vs formula");
                comparisons += 1;
                n += 1;
                size *= pv;
            }
            // rank vs formula for every n <= 40
            for n in 1..=40u32 {
                assert_eq!(
                    rank_method_count(&spec, n).unwrap(),
                    formula_count(&spec, n as u64).unwrap(),
                    "{spec} n={n}: rank vs formula"
                );
                comparisons += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}, budget 10 min");
    println!(
        "ACCEPTANCE 4: PASS - three-way oracle equivalence, {comparisons} comparisons, \
         zero mismatches in {elapsed:?} (< 10 min)"
    );
}

#[test]
fn criterion_05_fixed_point_tables() {
    for pv in [3u64, 5, 7, 11, 13] {
        let pm = p(pv);
        let b0 = CurveSpec::b0(pm);
        let c0 = CurveSpec::c0(pm);
        // #B0(F_p) = p + 1
        assert_eq!(count_points_bruteforce(&b0, 1, DEFAULT_BUDGET).unwrap().count, BigUint::from(pv + 1));
        assert_eq!(formula_count(&b0, 1).unwrap(), BigUint::from(pv + 1));
        // #C0(F_p) = 2p + 1
        assert_eq!(count_points_bruteforce(&c0, 1, DEFAULT_BUDGET).unwrap().count, BigUint::from(2 * pv + 1));
        assert_eq!(formula_count(&c0, 1).unwrap(), BigUint::from(2 * pv + 1));
        // #B0(F_{p^2}) = p^2 + 1 -/+ (p-1)p by p mod 4
        let expected = if pv % 4 == 1 {
            pv * pv + 1 - (pv - 1) * pv
        } else {
            pv * pv + 1 + (pv - 1) * pv
        };
        assert_eq!(count_points_bruteforce(&b0, 2, DEFAULT_BUDGET).unwrap().count, BigUint::from(expected));
        assert_eq!(formula_count(&b0, 2).unwrap(), BigUint::from(expected));
    }
    println!("ACCEPTANCE 5: PASS - fixed-point counts for p in {{3,5,7,11,13}} exact");
}

fn assert_divides(inner: &CurveSpec, outer: &CurveSpec) -> (usize, usize) {
    let li = lpoly_for_curve(inner).unwrap();
    let lo = lpoly_for_curve(outer).unwrap();
    let outcome = lpoly_divides(&li, &lo).unwrap();
    assert!(outcome.divides, "L({inner}) must divide L({outer}) with zero remainder");
    let q = outcome.quotient.unwrap();
    assert_eq!(q[0], BigInt::one(), "quotient must have constant term 1");
    (li.degree(), lo.degree())
}

#[test]
fn criterion_06_divisibility_theorem_c_family() {
    let start = Instant::now();
    let mut pairs = Vec::new();
    for (pv, k, m) in [(3u64, 1u32, 2u32), (3, 1, 3), (5, 1, 2), (5, 1, 3), (3, 2, 2)] {
        let inner = CurveSpec::ck1(p(pv), k).unwrap();
        let outer = CurveSpec::ck1(p(pv), k * m).unwrap();
        let (di, do_) = assert_divides(&inner, &outer);
        pairs.push(format!("p={pv} k={k} m={m} (deg {di} | deg {do_})"));
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1800), "took {elapsed:?}, budget 30 min");
    println!(
        "ACCEPTANCE 6: PASS - L(C_k) | L(C_km) with zero remainder: {} in {elapsed:?} (< 30 min)",
        pairs.join(", ")
    );
}

#[test]
fn criterion_07_divisibility_theorem_b_family() {
    let start = Instant::now();
    for (pv, k, m) in [(3u64, 1u32, 2u32), (3, 1, 3), (5, 1, 2), (5, 1, 3), (3, 2, 2)] {
        let inner = CurveSpec::bk(p(pv), k).unwrap();
        let outer = CurveSpec::bk(p(pv), k * m).unwrap();
        assert_divides(&inner, &outer);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1800), "took {elapsed:?}, budget 30 min");
    println!("ACCEPTANCE 7: PASS - L(B_k) | L(B_km) with zero remainder for the same parameter set in {elapsed:?}");
}

#[test]
fn criterion_08_non_divisibility_with_certificates() {
    // C_2 vs C_3 over F_3: periods 24 and 12
    let c2 = CurveSpec::ck1(p(3), 2).unwrap();
    let c3 = CurveSpec::ck1(p(3), 3).unwrap();
    let l2 = lpoly_for_curve(&c2).unwrap();
    let l3 = lpoly_for_curve(&c3).unwrap();

    assert!(!lpoly_divides(&l2, &l3).unwrap().divides);
    assert_eq!(period(&c2).unwrap(), 24);
    assert_eq!(period(&c3).unwrap(), 12);
    assert!(24 % 12 == 0 && 12 % 24 != 0);
    assert!(!spectrum_difference_nonneg(&c2, &c3).unwrap());

    // reverse direction exercises the period-inconclusive path: 12 | 24,
    // so the sqrt(p) multiplicity decides
    assert!(!lpoly_divides(&l3, &l2).unwrap().divides);
    let u0_c3 = sqrtp_multiplicity(&c3).unwrap();
    let u0_c2 = sqrtp_multiplicity(&c2).unwrap();
    assert!(u0_c3 > 0, "u_0(C_3/F_3) must be positive");
    assert_eq!(u0_c2, 0, "u_0(C_2/F_3) must vanish");

    // B_2 vs B_3 over F_3: periods 8 and 12
    let b2 = CurveSpec::bk(p(3), 2).unwrap();
    let b3 = CurveSpec::bk(p(3), 3).unwrap();
    assert!(!lpoly_divides(&lpoly_for_curve(&b2).unwrap(), &lpoly_for_curve(&b3).unwrap())
        .unwrap()
        .divides);
    assert_eq!(period(&b2).unwrap(), 8);
    assert_eq!(period(&b3).unwrap(), 12);
    assert!(12 % 8 != 0);
    assert!(!spectrum_difference_nonneg(&b2, &b3).unwrap());

    println!(
        "ACCEPTANCE 8: PASS - non-divisibility certified: period certificates fire for \
         (C_2,C_3) and (B_2,B_3) over F_3, and u_0(C_3) = {u0_c3} > 0 = u_0(C_2) settles the \
         period-inconclusive direction"
    );
}

#[test]
fn criterion_09_spectrum_integrity_two_witness() {
    let mut desk: Vec<CurveSpec> = Vec::new();
    for pv in [3u64, 5, 7] {
        desk.push(CurveSpec::b0(p(pv)));
        desk.push(CurveSpec::c0(p(pv)));
    }
    for pv in [3u64, 5] {
        for k in [1u32, 2] {
            desk.push(CurveSpec::bk(p(pv), k).unwrap());
            desk.push(CurveSpec::ck1(p(pv), k).unwrap());
        }
    }
    for spec in &desk {
        // constructor already enforces: integrality, nonnegativity,
        // exact re-synthesis of all s deficits, conjugation symmetry
        let sp = spectrum(spec).unwrap();
        assert_eq!(sp.total(), 2 * spec.genus(), "{spec}: multiplicities must sum to 2g");
        assert!(sp.conjugation_symmetric(), "{spec}");
        // second witness: expanding the spectrum reproduces the integer
        // L-polynomial computed through the count recurrence
        let expanded = expand_spectrum(&sp).unwrap();
        let l = lpoly_for_curve(spec).unwrap();
        assert_eq!(expanded, l.coeffs().to_vec(), "{spec}: spectrum and counts disagree");
    }
    println!(
        "ACCEPTANCE 9: PASS - {} spectra: nonnegative integer multiplicities summing to 2g, \
         conjugation-symmetric, re-synthesizing all deficits, and expanding to the exact \
         L-polynomial",
        desk.len()
    );
}

#[test]
fn criterion_10_reduction_rule_consistency() {
    let mut checks = 0u64;
    for pv in [3u64, 5, 7] {
        for spec in family_set(pv, 2) {
            let s = period(&spec).unwrap();
            let base = base_deficits(&spec, s).unwrap();
            for n in 1..=3 * s {
                let direct = deficit(&spec, n).unwrap();
                let reduced = reduce_supersingular(&base, s, n).unwrap();
                assert_eq!(direct, reduced, "{spec} at n = {n}");
                // and the counts they imply agree
                assert_eq!(
                    count_from_deficit(&direct, n).unwrap(),
                    count_from_deficit(&reduced, n).unwrap()
                );
                checks += 1;
            }
        }
    }
    println!("ACCEPTANCE 10: PASS - reduction rule reproduces the closed forms, {checks} levels, zero mismatches");
}

#[test]
fn criterion_11_a_invariance() {
    let mut checks = 0u64;
    for pv in [3u64, 5, 7] {
        for k in [1u32, 2] {
            let mut n = 1u32;
            let mut size = pv;
            while size <= 1_000_000 {
                assert!(
                    verify_a_invariance(p(pv), k, n, DEFAULT_BUDGET).unwrap(),
                    "counts of C_{{{k},a}} over F_{pv}^{n} depend on a"
                );
                checks += 1;
                n += 1;
                size *= pv;
            }
        }
    }
    println!("ACCEPTANCE 11: PASS - C_(k,a) counts independent of a, {checks} (p,k,n) cells, zero mismatches");
}

/// Not a numbered criterion: the golden polynomial rendered through the
/// cache must round-trip byte-identically.
#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra_env: Option<(&str, &str)>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_aszeta"));
        cmd.args([
            "lpoly", "--family", "B", "--p", "3", "--k", "2", "--cache-dir",
            dir.path().to_str().unwrap(),
        ]);
        if let Some((k, v)) = extra_env {
            cmd.env(k, v);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run(None);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1, "exactly one cache entry is written");
    let second = run(None);
    assert_eq!(first, second, "cache hit must render byte-identically");

    // a corrupted entry is a hard error with the dedicated exit code
    let path = entries[0].as_ref().unwrap().path();
    let body = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, body.replace("19683", "19684")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_aszeta"))
        .args([
            "lpoly", "--family", "B", "--p", "3", "--k", "2", "--cache-dir",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5), "cache corruption must exit 5");
}
