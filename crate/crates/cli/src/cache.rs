//! On-disk cache of computed L-polynomials: one JSON document per entry,
//! plain files under a directory, no database. Entries are keyed by the
//! canonical string "family:p:k:a:r" and re-validated on every read.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use aszeta::zeta::parse_poly;
use aszeta::{LPolynomial, PrimeModulus};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable that supplies the cache directory when the
/// --cache-dir flag is absent.
pub const CACHE_ENV: &str = "AS_ZETA_CACHE";

#[derive(Serialize, Deserialize, Debug)]
pub struct CacheEntry {
    pub key: String,
    pub p: u64,
    pub r: u32,
    pub genus: u64,
    /// Canonical ascending-power text of the polynomial.
    pub lpoly: String,
    pub tool_version: String,
    pub created_unix: u64,
}

pub fn cache_key(family: &str, p: u64, k: Option<u32>, a: Option<u64>, r: u32) -> String {
    let k = k.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    let a = a.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    format!("{family}:{p}:{k}:{a}:{r}")
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{}.json", key.replace(':', "_")))
}

fn corrupt(msg: impl Into<String>) -> CliError {
    CliError::cache(msg.into())
}

/// Reads and re-validates a cached polynomial. A present-but-broken entry
/// is a hard error (exit code 5), not a silent miss.
pub fn read(dir: &Path, key: &str, p: PrimeModulus) -> Result<Option<LPolynomial>, CliError> {
    let path = entry_path(dir, key);
    if !path.exists() {
        return Ok(None);
    }
    let raw = fs::read_to_string(&path).map_err(|e| corrupt(format!("unreadable cache entry {}: {e}", path.display())))?;
    let entry: CacheEntry =
        serde_json::from_str(&raw).map_err(|e| corrupt(format!("malformed cache entry {}: {e}", path.display())))?;
    if entry.key != key || entry.p != p.get() {
        return Err(corrupt(format!("cache entry {} does not match its key", path.display())));
    }
    let coeffs = parse_poly(&entry.lpoly).map_err(|e| corrupt(format!("bad polynomial text in cache: {e}")))?;
    let mut coeffs = coeffs;
    let expected_len = 2 * entry.genus as usize + 1;
    if coeffs.len() > expected_len {
        return Err(corrupt("cached polynomial exceeds its declared genus"));
    }
    coeffs.resize(expected_len, num::BigInt::from(0));
    let lpoly = LPolynomial::from_parts(p, entry.r, coeffs)
        .map_err(|e| corrupt(format!("cached polynomial rejected: {e}")))?;
    let violations = lpoly.validate();
    if !violations.is_empty() {
        return Err(corrupt(format!(
            "cached polynomial fails validation: {}",
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        )));
    }
    Ok(Some(lpoly))
}

pub fn write(dir: &Path, key: &str, lpoly: &LPolynomial) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| corrupt(format!("cannot create cache dir {}: {e}", dir.display())))?;
    let entry = CacheEntry {
        key: key.to_string(),
        p: lpoly.p(),
        r: lpoly.base_degree(),
        genus: lpoly.genus(),
        lpoly: lpoly.canonical_text(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    };
    let path = entry_path(dir, key);
    let body = serde_json::to_string_pretty(&entry).map_err(|e| corrupt(e.to_string()))?;
    fs::write(&path, body).map_err(|e| corrupt(format!("cannot write cache entry {}: {e}", path.display())))?;
    Ok(())
}

/// Cache directory from the flag, then the environment, then none.
pub fn resolve_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}
