//! Output rendering. Counts and polynomial coefficients exceed native
//! word sizes, so JSON serializes them as decimal strings; small
//! structural integers (p, k, n, s, multiplicities) stay numeric.

use aszeta::formulas::{Deficit, DeficitCase};
use aszeta::{CurveSpec, LPolynomial, WeilSpectrum};
use clap::ValueEnum;
use num::BigUint;
use serde_json::json;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

fn spec_fields(spec: &CurveSpec) -> serde_json::Value {
    json!({
        "family": spec.family_tag(),
        "p": spec.p().get(),
        "k": spec.k(),
        "a": spec.a(),
    })
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn count(spec: &CurveSpec, n: u32, method: &str, count: &BigUint, format: Format) {
    match format {
        Format::Human => println!("{spec} over F_{}^{n}: {count} points  [{method}]", spec.p().get()),
        Format::Json => {
            let mut obj = spec_fields(spec);
            obj["n"] = json!(n);
            obj["method"] = json!(method);
            obj["count"] = json!(count.to_string());
            println!("{obj}");
        }
        Format::Csv => {
            println!("family,p,k,a,n,method,count");
            println!(
                "{},{},{},{},{},{},{}",
                spec.family_tag(),
                spec.p().get(),
                spec.k().map(|k| k.to_string()).unwrap_or_default(),
                spec.a().map(|a| a.to_string()).unwrap_or_default(),
                n,
                method,
                count
            );
        }
    }
}

pub fn deficits(spec: &CurveSpec, rows: &[(u64, (Deficit, DeficitCase))], format: Format) {
    match format {
        Format::Human => {
            println!("deficits of {spec}:");
            for (n, (d, case)) in rows {
                println!("  n={n:<4} d={:<4} {:<24} {}", case.d, case.label, d);
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(n, (d, case))| {
                    json!({"n": n, "d": case.d, "case": case.label, "u": d.u, "v": d.v})
                })
                .collect();
            let mut obj = spec_fields(spec);
            obj["deficits"] = json!(items);
            println!("{obj}");
        }
        Format::Csv => {
            println!("n,d,case,deficit_u,deficit_v");
            for (n, (d, case)) in rows {
                println!("{n},{},{},{},{}", case.d, csv_quote(case.label), d.u, d.v);
            }
        }
    }
}

pub fn lpoly(spec: &CurveSpec, l: &LPolynomial, format: Format) {
    match format {
        Format::Human => println!("{}", l.canonical_text()),
        Format::Json => {
            let mut obj = spec_fields(spec);
            obj["r"] = json!(l.base_degree());
            obj["genus"] = json!(l.genus());
            obj["coefficients"] =
                json!(l.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
            obj["text"] = json!(l.canonical_text());
            println!("{obj}");
        }
        Format::Csv => {
            println!("degree,coefficient");
            for (i, c) in l.coeffs().iter().enumerate() {
                println!("{i},{c}");
            }
        }
    }
}

pub fn spectrum(spec: &CurveSpec, sp: &WeilSpectrum, format: Format) {
    match format {
        Format::Human => {
            println!(
                "{spec}: period s = {}, multiplicities of sqrt({}) w^j:",
                sp.s,
                sp.p
            );
            for (j, u) in sp.u.iter().enumerate() {
                if *u > 0 {
                    println!("  j={j:<4} u_j={u}");
                }
            }
            println!("  total = {} = 2g", sp.total());
        }
        Format::Json => println!("{}", sp.to_json_string()),
        Format::Csv => {
            println!("j,u");
            for (j, u) in sp.u.iter().enumerate() {
                println!("{j},{u}");
            }
        }
    }
}

pub fn table(spec: &CurveSpec, rows: &[(u64, DeficitCase, Deficit, BigUint)], format: Format) {
    match format {
        Format::Human => {
            println!("{:<5} {:<5} {:<26} {:>10} {:>10}  count", "n", "d", "case", "deficit_u", "deficit_v");
            for (n, case, d, count) in rows {
                println!("{n:<5} {:<5} {:<26} {:>10} {:>10}  {count}", case.d, case.label, d.u, d.v);
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(n, case, d, count)| {
                    json!({
                        "n": n,
                        "d": case.d,
                        "case": case.label,
                        "deficit_u": d.u,
                        "deficit_v": d.v,
                        "count": count.to_string(),
                    })
                })
                .collect();
            let mut obj = spec_fields(spec);
            obj["rows"] = json!(items);
            println!("{obj}");
        }
        Format::Csv => {
            println!("n,d,case,deficit_u,deficit_v,count");
            for (n, case, d, count) in rows {
                println!("{n},{},{},{},{},{}", case.d, csv_quote(case.label), d.u, d.v, count);
            }
        }
    }
}
