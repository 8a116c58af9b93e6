//! Exact-arithmetic toolkit for the Artin-Schreier curve families
//! B_0 : y^p - y = x^2, C_0 : y^p - y = x^2 + x,
//! B_k : y^p - y = x^{p^k+1}, C_k : y^p - y = x^{p^k+1} + a x over F_p.
//!
//! Three independent counting paths (exhaustive enumeration, quadratic
//! form rank/radical linear algebra, closed-form deficit tables) feed
//! exact L-polynomial synthesis, Weil-spectrum extraction through an
//! inverse DFT over cyclotomic rationals, and divisibility verdicts
//! between family members. Everything is integer or rational arithmetic;
//! no floating point appears anywhere.

pub mod curves;
pub mod error;
pub mod finite_field;
pub mod formulas;
pub mod quadratic_form;
pub mod spectrum;
pub mod zeta;

pub use curves::{
    count_points_bruteforce, verify_a_invariance, CurveKind, CurveSpec, PointCount, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use finite_field::{build_tower, legendre, FieldElement, FieldTower, PrimeModulus};
pub use formulas::{
    base_deficits, count_from_deficit, deficit, deficit_with_case, formula_count,
    reduce_supersingular, Deficit,
};
pub use quadratic_form::{affine_reduce, count_value, count_zeros, gram, rank_method_count, TraceFormSpec};
pub use spectrum::{
    expand_spectrum, lpoly_divides, period, period_divides, spectrum, spectrum_difference_nonneg,
    spectrum_from_deficits, sqrtp_multiplicity, DivisionOutcome, WeilSpectrum,
};
pub use zeta::{lpoly_for_curve, lpoly_from_counts, LPolynomial, Violation};
