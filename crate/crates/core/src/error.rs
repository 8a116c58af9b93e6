use num::BigInt;
use thiserror::Error;

/// Errors produced by the library. Variants that indicate a violated
/// mathematical invariant (as opposed to bad input or an exhausted budget)
/// mean the input data cannot come from a curve of the promised shape.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic must be an odd prime >= 3, got {0}")]
    NotOddPrime(u64),

    #[error("extension degree must be >= 1")]
    ZeroDegree,

    #[error("polynomial of degree {degree} is not a valid modulus for degree {expected}")]
    BadModulusDegree { degree: usize, expected: u32 },

    #[error("modulus is not monic")]
    NonMonicModulus,

    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },

    #[error("{divisor} does not divide extension degree {degree}")]
    NotASubfieldDegree { divisor: u32, degree: u32 },

    #[error("element has {got} coefficients, tower expects {expected}")]
    CoefficientLength { got: usize, expected: usize },

    #[error("curve is defined over F_{spec_p} but the field has characteristic {tower_p}")]
    CharacteristicMismatch { spec_p: u64, tower_p: u64 },

    #[error("family {family} requires k >= 1")]
    ZeroK { family: &'static str },

    #[error("coefficient a = {a} must be a nonzero residue mod {p}")]
    BadCoefficientA { a: u64, p: u64 },

    #[error("genus overflows the supported range for p = {p}, k = {k}")]
    GenusOverflow { p: u64, k: u32 },

    #[error("enumerating F_{p}^{n} needs {needed} points, budget is {budget}")]
    BudgetExceeded { p: u64, n: u32, needed: u128, budget: u64 },

    #[error("trace form has a nonzero target, use the value-count path")]
    NonzeroTarget,

    #[error("trace form target is zero, use the zero-count path")]
    ZeroTarget,

    #[error("trace form has a linear part; reduce it away before counting")]
    LinearPartPresent,

    #[error("deficit ({u}, {v}) is inconsistent with extension degree {n}: {reason}")]
    DeficitParity { u: i64, v: i64, n: u64, reason: &'static str },

    #[error("base deficits are missing the divisor {m} of s = {s}")]
    MissingBaseDeficit { m: u64, s: u64 },

    #[error("n must be a positive integer")]
    ZeroN,

    #[error("expected {expected} point counts, got {got}")]
    WrongCountLength { expected: usize, got: usize },

    #[error("count at level {n} violates the Hasse-Weil bound")]
    HasseWeilViolated { n: usize },

    #[error("L-polynomial coefficient c_{index} is not an integer: the counts are inconsistent with a curve")]
    NonIntegerCoefficient { index: usize },

    #[error("count at level {n} would be negative ({value}); the polynomial is not a curve L-polynomial")]
    NegativeCount { n: u64, value: BigInt },

    #[error("base-change degree must be >= 1")]
    ZeroBaseChange,

    #[error("L-polynomials live over different base fields (p^r = {p1}^{r1} vs {p2}^{r2})")]
    BaseFieldMismatch { p1: u64, r1: u32, p2: u64, r2: u32 },

    #[error("no divisor of {s_max} has deficit 2g = {two_g}: spectrum is not supersingular of the expected period")]
    PeriodNotFound { s_max: u64, two_g: u64 },

    #[error("spectrum multiplicity u_{j} is not a rational integer")]
    SpectrumNotIntegral { j: u64 },

    #[error("spectrum multiplicity u_{j} is negative")]
    SpectrumNegative { j: u64 },

    #[error("spectrum does not re-synthesize the deficit at level {n}")]
    SpectrumResynthesis { n: u64 },

    #[error("spectrum multiplicities sum to {got}, expected {expected}")]
    SpectrumSum { got: u64, expected: u64 },

    #[error("spectrum is not closed under conjugation at index {j}")]
    SpectrumConjugation { j: u64 },

    #[error("period {s} does not divide the target period {target}")]
    PeriodLift { s: u64, target: u64 },

    #[error("expanded spectrum has a non-integer coefficient at degree {degree}")]
    SpectrumExpansion { degree: usize },

    #[error("cannot parse L-polynomial text: {0}")]
    BadPolynomialText(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
