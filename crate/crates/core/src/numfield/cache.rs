//! Splitting cache keyed by (polynomial hash, prime).
//!
//! File format, one record per line:
//!
//! ```text
//! <polyhash> <p> e1,f1;e2,f2;...
//! <polyhash> <p> index
//! ```
//!
//! Pairs are listed in canonical factor order, so place indices survive a
//! round trip through the file.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use super::place::{LocalFactor, PrimeDecomposition};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheEntry {
    Decomposition(Vec<LocalFactor>),
    IndexPrime,
}

#[derive(Debug, Default)]
pub struct SplitCache {
    table: RwLock<HashMap<(String, u64), CacheEntry>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

impl SplitCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, hash: &str, p: u64) -> Option<CacheEntry> {
        let found = self
            .table
            .read()
            .expect("cache lock poisoned")
            .get(&(hash.to_string(), p))
            .cloned();
        if found.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        } else {
            self.misses.fetch_add(1, Ordering::Relaxed);
        }
        found
    }

    pub fn insert(&self, hash: &str, p: u64, entry: CacheEntry) {
        self.table
            .write()
            .expect("cache lock poisoned")
            .insert((hash.to_string(), p), entry);
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.table.write().expect("cache lock poisoned").clear();
    }

    /// Loads records from `path`; a missing file yields an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        let cache = SplitCache::new();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => {
                return Err(Error::InvalidArgument(format!(
                    "cache {}: {e}",
                    path.display()
                )))
            }
        };
        file.lock_shared()
            .map_err(|e| Error::InvalidArgument(format!("cache lock: {e}")))?;
        {
            let mut table = cache.table.write().expect("cache lock poisoned");
            for (lineno, line) in BufReader::new(&file).lines().enumerate() {
                let line = line.map_err(|e| Error::InvalidArgument(format!("cache read: {e}")))?;
                if line.trim().is_empty() {
                    continue;
                }
                let (key, entry) = parse_record(&line).ok_or_else(|| {
                    Error::InvalidArgument(format!("cache line {}: {line:?}", lineno + 1))
                })?;
                table.insert(key, entry);
            }
        }
        let _ = file.unlock();
        Ok(cache)
    }

    /// Writes all records (sorted) to `path` under an exclusive lock.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io =
            |e: std::io::Error| Error::InvalidArgument(format!("cache {}: {e}", path.display()));
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir).map_err(io)?;
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .write(true)
            .truncate(false)
            .open(path)
            .map_err(io)?;
        file.lock().map_err(io)?;
        file.set_len(0).map_err(io)?;
        let mut records: Vec<String> = self
            .table
            .read()
            .expect("cache lock poisoned")
            .iter()
            .map(|((h, p), entry)| format_record(h, *p, entry))
            .collect();
        records.sort();
        {
            let mut w = BufWriter::new(&file);
            for r in records {
                writeln!(w, "{r}").map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
        file.unlock().map_err(io)?;
        Ok(())
    }
}

pub fn format_record(hash: &str, p: u64, entry: &CacheEntry) -> String {
    match entry {
        CacheEntry::IndexPrime => format!("{hash} {p} index"),
        CacheEntry::Decomposition(factors) => {
            let body: Vec<String> = factors
                .iter()
                .map(|lf| format!("{},{}", lf.e, lf.f))
                .collect();
            format!("{hash} {p} {}", body.join(";"))
        }
    }
}

pub fn parse_record(line: &str) -> Option<((String, u64), CacheEntry)> {
    let mut parts = line.split_whitespace();
    let hash = parts.next()?.to_string();
    let p: u64 = parts.next()?.parse().ok()?;
    let body = parts.next()?;
    if parts.next().is_some() {
        return None;
    }
    let entry = if body == "index" {
        CacheEntry::IndexPrime
    } else {
        let factors = body
            .split(';')
            .map(|pair| {
                let (e, f) = pair.split_once(',')?;
                Some(LocalFactor {
                    e: e.parse().ok()?,
                    f: f.parse().ok()?,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        CacheEntry::Decomposition(factors)
    };
    Some(((hash, p), entry))
}

impl CacheEntry {
    pub fn from_result(r: &Result<PrimeDecomposition>) -> Option<Self> {
        match r {
            Ok(d) => Some(CacheEntry::Decomposition(d.factors.clone())),
            Err(Error::IndexPrime { .. }) => Some(CacheEntry::IndexPrime),
            Err(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_roundtrip() {
        let e =
            CacheEntry::Decomposition(vec![LocalFactor { e: 1, f: 4 }, LocalFactor { e: 1, f: 4 }]);
        let line = format_record("abcd", 3, &e);
        assert_eq!(line, "abcd 3 1,4;1,4");
        assert_eq!(parse_record(&line), Some((("abcd".into(), 3), e)));
        assert_eq!(
            parse_record("abcd 2 index").unwrap().1,
            CacheEntry::IndexPrime
        );
        assert!(parse_record("abcd 2").is_none());
        assert!(parse_record("abcd x 1,1").is_none());
    }

    #[test]
    fn save_and_load() {
        let dir = std::env::temp_dir().join(format!("brauer-cache-test-{}", std::process::id()));
        let path = dir.join("split.cache");
        let cache = SplitCache::new();
        cache.insert(
            "h",
            5,
            CacheEntry::Decomposition(vec![LocalFactor { e: 1, f: 1 }; 2]),
        );
        cache.insert("h", 2, CacheEntry::IndexPrime);
        cache.save(&path).unwrap();
        let loaded = SplitCache::load(&path).unwrap();
        assert_eq!(loaded.len(), 2);
        assert_eq!(loaded.get("h", 2), Some(CacheEntry::IndexPrime));
        fs::remove_dir_all(&dir).unwrap();
    }
}
