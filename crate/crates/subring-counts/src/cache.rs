//! Append-only count cache.
//!
//! One JSON record per line; records are merged idempotently on load.
//! Records never expire and are never rewritten: a key that reappears with a
//! different value, whether on disk or from a fresh computation, is a hard
//! integrity error with its own exit code. Keys canonicalize the
//! leading-ones reduction of compositions (counts are invariant under it)
//! and nothing else; part order matters beyond that and distinct orders are
//! distinct keys.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::arith::ExactInt;
use crate::error::{Error, Result};
use crate::lattice::Composition;

/// Environment variable naming the cache file; the `--cache-path` flag wins
/// over it, and `subring-counts-cache.jsonl` in the working directory is the
/// fallback.
pub const CACHE_PATH_ENV: &str = "SUBRING_COUNTS_CACHE";
pub const DEFAULT_CACHE_FILE: &str = "subring-counts-cache.jsonl";

/// How a cached value was produced.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumerated,
    ClosedForm,
    Recurrence,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Enumerated => write!(f, "enumerated"),
            Method::ClosedForm => write!(f, "closed-form"),
            Method::Recurrence => write!(f, "recurrence"),
        }
    }
}

/// One cached count.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    /// Decimal string; counts can exceed every JSON-safe integer width.
    pub value: String,
    pub method: Method,
    pub engine_version: String,
    pub timestamp_unix: u64,
    /// Original key before the leading-ones reduction, when it differed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_from: Option<String>,
}

/// Canonical cache key for a composition count: strips leading ones (the
/// count is invariant) and records the original spelling when it differed.
pub fn composition_key(alpha: &Composition, p: u64) -> (String, Option<String>) {
    let stripped = alpha.strip_leading_ones();
    let key = format!("galpha:{stripped}:p={p}");
    if &stripped == alpha {
        (key, None)
    } else {
        (key, Some(format!("galpha:{alpha}:p={p}")))
    }
}

pub fn count_key(kind: &str, n: u32, e: u32, p: u64) -> String {
    format!("{kind}:n={n},e={e}:p={p}")
}

pub fn partial_sum_key(n: u32, x: u64) -> String {
    format!("nr:n={n},x={x}")
}

/// In-memory view of a cache file.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: BTreeMap<String, CacheRecord>,
}

impl Cache {
    /// Load (or lazily create) the cache at `path`. Duplicate keys with
    /// identical values merge silently; conflicting values are an integrity
    /// error.
    pub fn open(path: impl Into<PathBuf>) -> Result<Cache> {
        let path = path.into();
        let mut records = BTreeMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(&path)?;
            for (idx, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let record: CacheRecord =
                    serde_json::from_str(line).map_err(|err| Error::MalformedCacheRecord {
                        path: path.display().to_string(),
                        line: idx + 1,
                        message: err.to_string(),
                    })?;
                merge(&mut records, record)?;
            }
        }
        Ok(Cache { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn lookup(&self, key: &str) -> Option<&CacheRecord> {
        self.records.get(key)
    }

    /// Record a freshly computed value. If the key is already cached the
    /// recomputation must reproduce the cached value bit-exactly; otherwise
    /// the record is appended to the file.
    pub fn record(
        &mut self,
        key: &str,
        value: ExactInt,
        method: Method,
        reduced_from: Option<String>,
    ) -> Result<()> {
        let value = value.to_string();
        if let Some(existing) = self.records.get(key) {
            if existing.value != value {
                return Err(Error::CacheConflict {
                    key: key.to_string(),
                    existing: existing.value.clone(),
                    new: value,
                });
            }
            return Ok(());
        }
        let record = CacheRecord {
            key: key.to_string(),
            value,
            method,
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            reduced_from,
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let line = serde_json::to_string(&record).expect("record serializes");
        writeln!(file, "{line}")?;
        self.records.insert(record.key.clone(), record);
        Ok(())
    }
}

fn merge(records: &mut BTreeMap<String, CacheRecord>, record: CacheRecord) -> Result<()> {
    if let Some(existing) = records.get(&record.key) {
        if existing.value != record.value {
            return Err(Error::CacheConflict {
                key: record.key.clone(),
                existing: existing.value.clone(),
                new: record.value,
            });
        }
        return Ok(());
    }
    records.insert(record.key.clone(), record);
    Ok(())
}

/// Resolve the cache path: explicit flag, then environment, then default.
pub fn resolve_path(flag: Option<&Path>) -> PathBuf {
    if let Some(path) = flag {
        return path.to_path_buf();
    }
    if let Ok(env_path) = std::env::var(CACHE_PATH_ENV) {
        if !env_path.is_empty() {
            return PathBuf::from(env_path);
        }
    }
    PathBuf::from(DEFAULT_CACHE_FILE)
}
