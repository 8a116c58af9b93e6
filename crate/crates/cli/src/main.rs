//! Batch CLI over the exact Artin-Schreier zeta library: counts,
//! deficit tables, L-polynomials, Weil spectra, and the divisibility /
//! non-divisibility verification suites.
//!
//! Exit codes: 0 pass, 2 verification failure, 3 budget exceeded,
//! 4 bad input, 5 cache corruption.

mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aszeta::{
    count_points_bruteforce, formula_count, lpoly_divides, lpoly_for_curve, period,
    rank_method_count, spectrum, spectrum_difference_nonneg, sqrtp_multiplicity, CurveSpec, Error,
    PrimeModulus, DEFAULT_BUDGET,
};

use render::Format;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn verification(m: impl Into<String>) -> Self {
        Self::new(2, m)
    }

    pub fn budget(m: impl Into<String>) -> Self {
        Self::new(3, m)
    }

    pub fn input(m: impl Into<String>) -> Self {
        Self::new(4, m)
    }

    pub fn cache(m: impl Into<String>) -> Self {
        Self::new(5, m)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::BudgetExceeded { .. } => 3,
            Error::NotPrime(_)
            | Error::NotOddPrime(_)
            | Error::ZeroDegree
            | Error::ZeroK { .. }
            | Error::BadCoefficientA { .. }
            | Error::GenusOverflow { .. }
            | Error::ZeroN
            | Error::ZeroBaseChange
            | Error::BadModulusDegree { .. }
            | Error::NonMonicModulus
            | Error::BadPolynomialText(_) => 4,
            // anything else is a violated mathematical invariant
            _ => 2,
        };
        CliError::new(code, e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "aszeta",
    version,
    about = "Exact point counts, L-polynomials and Weil spectra for Artin-Schreier curve families"
)]
struct Cli {
    /// Size of the worker pool for enumeration-heavy commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FamilyArg {
    #[value(name = "B0", alias = "b0")]
    B0,
    #[value(name = "C0", alias = "c0")]
    C0,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// Curve family: B0 (y^p-y=x^2), C0 (x^2+x), B (x^{p^k+1}), C (x^{p^k+1}+ax)
    #[arg(long, value_enum)]
    family: FamilyArg,

    /// The odd prime p of the base field F_p
    #[arg(long)]
    p: u64,

    /// Family index k (required for families B and C)
    #[arg(long)]
    k: Option<u32>,

    /// Linear coefficient a of the C family, a nonzero residue mod p
    #[arg(long, default_value_t = 1)]
    a: u64,
}

impl CurveArgs {
    fn spec(&self) -> Result<CurveSpec, CliError> {
        let p = PrimeModulus::new(self.p)?;
        let need_k = || {
            self.k.ok_or_else(|| CliError::input("families B and C require --k"))
        };
        Ok(match self.family {
            FamilyArg::B0 => CurveSpec::b0(p),
            FamilyArg::C0 => CurveSpec::c0(p),
            FamilyArg::B => CurveSpec::bk(p, need_k()?)?,
            FamilyArg::C => CurveSpec::ck(p, need_k()?, self.a)?,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum MethodArg {
    Formula,
    Rank,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Number of rational points over F_{p^n}
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        /// Extension degree n >= 1
        #[arg(long)]
        n: u32,
        /// Counting path: closed formula, quadratic-form rank, or
        /// exhaustive enumeration
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
        /// Enumeration budget for --method brute
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Normalized deficits -p^{-n/2}(#X - p^n - 1) for n = 1..n
    Deficits {
        #[command(flatten)]
        curve: CurveArgs,
        /// Largest extension degree
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// L-polynomial over F_p, optionally base-changed to F_{p^m}
    Lpoly {
        #[command(flatten)]
        curve: CurveArgs,
        /// Base-change degree: emit the L-polynomial over F_{p^m}
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        /// Directory for the L-polynomial cache (falls back to AS_ZETA_CACHE)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Weil spectrum: period s and multiplicities of sqrt(p) w_s^j
    Spectrum {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Verify L(X_k) | L(X_{km}) by exact division and by spectrum comparison
    VerifyDivides {
        /// Family to test: B or C
        #[arg(long, value_enum, default_value_t = FamilyArg::C)]
        family: FamilyArg,
        #[arg(long)]
        p: u64,
        /// Inner index k
        #[arg(long)]
        k: u32,
        /// Multiplier: the outer curve is X_{km}
        #[arg(long)]
        m: u32,
    },
    /// Verify L(X_k) does not divide L(X_l) when k does not divide l,
    /// with a period or sqrt(p)-multiplicity certificate
    VerifyNondivides {
        /// Family to test: B or C
        #[arg(long, value_enum, default_value_t = FamilyArg::C)]
        family: FamilyArg,
        #[arg(long)]
        p: u64,
        /// Inner index k
        #[arg(long)]
        k: u32,
        /// Outer index l, not a multiple of k
        #[arg(long)]
        l: u32,
    },
    /// Three-way oracle: brute force vs rank method vs closed formula
    VerifyOracle {
        /// Primes to sweep
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 7])]
        p: Vec<u64>,
        /// Largest family index k
        #[arg(long, default_value_t = 2)]
        k_max: u32,
        /// Brute-force field-size cap: enumerate while p^n <= budget
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Largest n for the rank-vs-formula comparison
        #[arg(long, default_value_t = 40)]
        n_max: u32,
    },
    /// Case table: one row per extension degree with deficit and count
    Table {
        #[command(flatten)]
        curve: CurveArgs,
        /// Number of rows; 0 emits only the header
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::input("--jobs must be >= 1"));
        }
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match cli.command {
        Command::Count { curve, n, method, budget, format } => {
            if n == 0 {
                return Err(CliError::input("--n must be >= 1"));
            }
            let spec = curve.spec()?;
            let (count, method_name) = match method {
                MethodArg::Formula => (formula_count(&spec, n as u64)?, "formula"),
                MethodArg::Rank => (rank_method_count(&spec, n)?, "rank"),
                MethodArg::Brute => (count_points_bruteforce(&spec, n, budget)?.count, "brute"),
            };
            render::count(&spec, n, method_name, &count, format);
            Ok(())
        }
        Command::Deficits { curve, n, format } => {
            let spec = curve.spec()?;
            if n == 0 {
                return Err(CliError::input("--n must be >= 1"));
            }
            let rows = (1..=n)
                .map(|level| aszeta::deficit_with_case(&spec, level).map(|dc| (level, dc)))
                .collect::<Result<Vec<_>, _>>()?;
            render::deficits(&spec, &rows, format);
            Ok(())
        }
        Command::Lpoly { curve, m, format, cache_dir } => {
            let spec = curve.spec()?;
            if m == 0 {
                return Err(CliError::input("--m must be >= 1"));
            }
            let key = cache::cache_key(spec.family_tag(), spec.p().get(), spec.k(), spec.a(), m);
            let dir = cache::resolve_dir(cache_dir);
            if let Some(dir) = &dir {
                if let Some(hit) = cache::read(dir, &key, spec.p())? {
                    render::lpoly(&spec, &hit, format);
                    return Ok(());
                }
            }
            let l = lpoly_for_curve(&spec)?;
            let l = if m == 1 { l } else { l.base_change(m)? };
            if let Some(dir) = &dir {
                cache::write(dir, &key, &l)?;
            }
            render::lpoly(&spec, &l, format);
            Ok(())
        }
        Command::Spectrum { curve, format } => {
            let spec = curve.spec()?;
            let sp = spectrum(&spec)?;
            render::spectrum(&spec, &sp, format);
            Ok(())
        }
        Command::VerifyDivides { family, p, k, m } => {
            let p = PrimeModulus::new(p)?;
            if k == 0 || m == 0 {
                return Err(CliError::input("--k and --m must be >= 1"));
            }
            let km = k.checked_mul(m).ok_or_else(|| CliError::input("k*m overflows"))?;
            let (tag, inner, outer) = match family {
                FamilyArg::B => ("B", CurveSpec::bk(p, k)?, CurveSpec::bk(p, km)?),
                FamilyArg::C => ("C", CurveSpec::ck1(p, k)?, CurveSpec::ck1(p, km)?),
                _ => return Err(CliError::input("verify-divides applies to families B and C")),
            };
            let li = lpoly_for_curve(&inner)?;
            let lo = lpoly_for_curve(&outer)?;
            let division = lpoly_divides(&li, &lo)?;
            let spectral = spectrum_difference_nonneg(&inner, &outer)?;
            let verdict = division.divides && spectral;
            println!(
                "L({tag}_{k}) | L({tag}_{km}) over F_{}: {} (division: {}, spectrum: {})",
                p.get(),
                if verdict { "PASS" } else { "FAIL" },
                if division.divides { "exact, remainder 0" } else { "nonzero remainder" },
                if spectral { "multiplicities dominate" } else { "multiplicity drops" },
            );
            if verdict {
                Ok(())
            } else {
                Err(CliError::verification(format!(
                    "L({tag}_{k}) does not divide L({tag}_{km}) over F_{}",
                    p.get()
                )))
            }
        }
        Command::VerifyNondivides { family, p, k, l } => {
            let p = PrimeModulus::new(p)?;
            if k == 0 || l == 0 {
                return Err(CliError::input("--k and --l must be >= 1"));
            }
            if l % k == 0 {
                return Err(CliError::input(
                    "k divides l: the non-divisibility statement needs k !| l",
                ));
            }
            let (tag, inner, outer) = match family {
                FamilyArg::B => ("B", CurveSpec::bk(p, k)?, CurveSpec::bk(p, l)?),
                FamilyArg::C => ("C", CurveSpec::ck1(p, k)?, CurveSpec::ck1(p, l)?),
                _ => return Err(CliError::input("verify-nondivides applies to families B and C")),
            };
            let li = lpoly_for_curve(&inner)?;
            let lo = lpoly_for_curve(&outer)?;
            let division = lpoly_divides(&li, &lo)?;

            let s_inner = period(&inner)?;
            let s_outer = period(&outer)?;
            let certificate = if s_outer % s_inner != 0 {
                Some(format!("period {s_inner} does not divide period {s_outer}"))
            } else {
                let u0_inner = sqrtp_multiplicity(&inner)?;
                let u0_outer = sqrtp_multiplicity(&outer)?;
                if u0_inner > 0 && u0_outer == 0 {
                    Some(format!(
                        "sqrt(p) multiplicity {u0_inner} > 0 in L({tag}_{k}) but 0 in L({tag}_{l})"
                    ))
                } else {
                    None
                }
            };
            let verdict = !division.divides && certificate.is_some();
            println!(
                "L({tag}_{k}) !| L({tag}_{l}) over F_{}: {} (division remainder {}, certificate: {})",
                p.get(),
                if verdict { "PASS" } else { "FAIL" },
                if division.divides { "ZERO" } else { "nonzero" },
                certificate.as_deref().unwrap_or("none"),
            );
            if verdict {
                Ok(())
            } else {
                Err(CliError::verification(format!(
                    "could not certify L({tag}_{k}) !| L({tag}_{l}) over F_{}",
                    p.get()
                )))
            }
        }
        Command::VerifyOracle { p, k_max, budget, n_max } => verify_oracle(&p, k_max, budget, n_max),
        Command::Table { curve, n_max, format } => {
            let spec = curve.spec()?;
            let mut rows = Vec::new();
            for n in 1..=n_max {
                let (d, case) = aszeta::deficit_with_case(&spec, n)?;
                let count = aszeta::count_from_deficit(&d, n)?;
                rows.push((n, case, d, count));
            }
            render::table(&spec, &rows, format);
            Ok(())
        }
    }
}

fn family_set(p: PrimeModulus, k_max: u32) -> Result<Vec<CurveSpec>, CliError> {
    let mut specs = vec![CurveSpec::b0(p), CurveSpec::c0(p)];
    for k in 1..=k_max {
        specs.push(CurveSpec::bk(p, k)?);
        specs.push(CurveSpec::ck1(p, k)?);
    }
    Ok(specs)
}

/// The three-way count agreement sweep. Exhaustive enumeration while
/// p^n stays within budget, rank method vs closed formula up to n_max.
fn verify_oracle(primes: &[u64], k_max: u32, budget: u64, n_max: u32) -> Result<(), CliError> {
    let mut checked = 0u64;
    for &pv in primes {
        let p = PrimeModulus::new(pv)?;
        for spec in family_set(p, k_max)? {
            let mut n = 1u32;
            let mut size = pv;
            while size <= budget {
                let brute = count_points_bruteforce(&spec, n, budget)?.count;
                let rank = rank_method_count(&spec, n)?;
                let formula = formula_count(&spec, n as u64)?;
                if brute != rank || brute != formula {
                    println!(
                        "MISMATCH {spec} n={n}: brute={brute} rank={rank} formula={formula}"
                    );
                    return Err(CliError::verification(format!(
                        "oracle disagreement for {spec} at n = {n}"
                    )));
                }
                checked += 1;
                n += 1;
                size = match size.checked_mul(pv) {
                    Some(s) => s,
                    None => break,
                };
            }
            for n in 1..=n_max {
                let rank = rank_method_count(&spec, n)?;
                let formula = formula_count(&spec, n as u64)?;
                if rank != formula {
                    println!("MISMATCH {spec} n={n}: rank={rank} formula={formula}");
                    return Err(CliError::verification(format!(
                        "rank/formula disagreement for {spec} at n = {n}"
                    )));
                }
                checked += 1;
            }
            println!("{spec}: brute (p^n <= {budget}) / rank / formula agree up to n = {n_max}");
        }
    }
    println!("oracle agreement: {checked} comparisons, zero mismatches");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here with a zero exit
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(4);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
