//! Result cache for pure computations, keyed by a canonical text key.
//!
//! Entries always land in an in-process memo. When a directory is
//! configured they are also persisted, one JSON file per key, written to a
//! temporary file and renamed into place. A file whose schema version or
//! stored key does not match is treated as absent and overwritten.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use log::warn;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::young::Weight;

pub const CACHE_SCHEMA_VERSION: &str = "1";

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "SOD_CACHE_DIR";

/// Canonical cache key: operation, Grassmannian context, and weights in
/// canonical syntax, e.g. `ext:k=2:n=4:1,0/0,0/0,0/0,0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub op: String,
    pub k: usize,
    pub n: usize,
    pub weights: Vec<Weight>,
}

impl CacheKey {
    pub fn new(op: &str, k: usize, n: usize, weights: Vec<Weight>) -> Self {
        CacheKey {
            op: op.to_string(),
            k,
            n,
            weights,
        }
    }
}

impl fmt::Display for CacheKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:k={}:n={}:", self.op, self.k, self.n)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for CacheKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed cache key {s:?}"));
        let mut it = s.splitn(4, ':');
        let op = it.next().filter(|o| !o.is_empty()).ok_or_else(bad)?;
        let k = it
            .next()
            .and_then(|t| t.strip_prefix("k="))
            .and_then(|t| t.parse().ok())
            .ok_or_else(bad)?;
        let n = it
            .next()
            .and_then(|t| t.strip_prefix("n="))
            .and_then(|t| t.parse().ok())
            .ok_or_else(bad)?;
        let rest = it.next().ok_or_else(bad)?;
        let weights = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split('/').map(Weight::from_str).collect::<Result<Vec<_>>>()?
        };
        Ok(CacheKey {
            op: op.to_string(),
            k,
            n,
            weights,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct StoredEntry {
    schema_version: String,
    key: String,
    value: serde_json::Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub memory_hits: u64,
    pub disk_hits: u64,
    pub computed: u64,
}

#[derive(Debug, Default)]
pub struct ResultCache {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<String, serde_json::Value>>,
    memory_hits: AtomicU64,
    disk_hits: AtomicU64,
    computed: AtomicU64,
}

impl ResultCache {
    pub fn in_memory() -> Self {
        ResultCache::default()
    }

    pub fn on_disk(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(ResultCache {
            dir: Some(dir),
            ..ResultCache::default()
        })
    }

    /// Disk cache if `SOD_CACHE_DIR` is set, memory only otherwise.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => ResultCache::on_disk(PathBuf::from(d)),
            _ => Ok(ResultCache::in_memory()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            memory_hits: self.memory_hits.load(Ordering::Relaxed),
            disk_hits: self.disk_hits.load(Ordering::Relaxed),
            computed: self.computed.load(Ordering::Relaxed),
        }
    }

    pub fn get_or_compute<T, F>(&self, key: &CacheKey, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        let key_text = key.to_string();
        if let Some(v) = self.memo.lock().unwrap().get(&key_text) {
            if let Ok(t) = serde_json::from_value(v.clone()) {
                self.memory_hits.fetch_add(1, Ordering::Relaxed);
                return Ok(t);
            }
        }
        if let Some(v) = self.read_disk(&key_text) {
            if let Ok(t) = serde_json::from_value::<T>(v.clone()) {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                self.memo.lock().unwrap().insert(key_text, v);
                return Ok(t);
            }
            warn!("cache entry for {key_text} has an unexpected shape; recomputing");
        }
        let value = compute()?;
        self.computed.fetch_add(1, Ordering::Relaxed);
        let json = serde_json::to_value(&value).map_err(|e| Error::Cache(e.to_string()))?;
        self.write_disk(&key_text, &json);
        self.memo.lock().unwrap().insert(key_text, json);
        Ok(value)
    }

    fn path_for(&self, key_text: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let digest = Sha256::digest(key_text.as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Some(dir.join(format!("{name}.json")))
    }

    fn read_disk(&self, key_text: &str) -> Option<serde_json::Value> {
        let path = self.path_for(key_text)?;
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice::<StoredEntry>(&bytes) {
            Ok(e) if e.schema_version == CACHE_SCHEMA_VERSION && e.key == key_text => Some(e.value),
            Ok(e) if e.schema_version != CACHE_SCHEMA_VERSION => {
                warn!(
                    "cache entry {} has schema version {}; recomputing",
                    path.display(),
                    e.schema_version
                );
                None
            }
            Ok(_) => {
                warn!("cache entry {} belongs to another key; recomputing", path.display());
                None
            }
            Err(err) => {
                warn!("corrupt cache entry {}: {err}; recomputing", path.display());
                None
            }
        }
    }

    fn write_disk(&self, key_text: &str, value: &serde_json::Value) {
        let Some(path) = self.path_for(key_text) else {
            return;
        };
        let entry = StoredEntry {
            schema_version: CACHE_SCHEMA_VERSION.to_string(),
            key: key_text.to_string(),
            value: value.clone(),
        };
        let tmp = path.with_extension(format!(
            "tmp.{}.{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let result = serde_json::to_vec(&entry)
            .map_err(|e| e.to_string())
            .and_then(|bytes| fs::write(&tmp, bytes).map_err(|e| e.to_string()))
            .and_then(|_| fs::rename(&tmp, &path).map_err(|e| e.to_string()));
        if let Err(e) = result {
            warn!("could not write cache entry {}: {e}", path.display());
            let _ = fs::remove_file(&tmp);
        }
    }
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bott::GradedDimension;

    fn key() -> CacheKey {
        CacheKey::new(
            "ext",
            2,
            4,
            vec![
                "1,0".parse().unwrap(),
                "0,0".parse().unwrap(),
                "0,-2".parse().unwrap(),
                "1,1".parse().unwrap(),
            ],
        )
    }

    #[test]
    fn key_round_trip() {
        let k = key();
        let text = k.to_string();
        assert_eq!(text, "ext:k=2:n=4:1,0/0,0/0,-2/1,1");
        assert_eq!(text.parse::<CacheKey>().unwrap(), k);
        let empty = CacheKey::new("lr", 1, 2, vec![]);
        assert_eq!(empty.to_string().parse::<CacheKey>().unwrap(), empty);
        assert!("nonsense".parse::<CacheKey>().is_err());
    }

    #[test]
    fn memory_hits() {
        let c = ResultCache::in_memory();
        let v: GradedDimension = c
            .get_or_compute(&key(), || Ok(GradedDimension::concentrated(0, 3)))
            .unwrap();
        let again: GradedDimension = c.get_or_compute(&key(), || panic!("should be cached")).unwrap();
        assert_eq!(v, again);
        assert_eq!(
            c.stats(),
            CacheStats {
                memory_hits: 1,
                disk_hits: 0,
                computed: 1
            }
        );
    }

    #[test]
    fn disk_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let first = ResultCache::on_disk(dir.path()).unwrap();
        let _: GradedDimension = first
            .get_or_compute(&key(), || Ok(GradedDimension::concentrated(1, 2)))
            .unwrap();

        let second = ResultCache::on_disk(dir.path()).unwrap();
        let got: GradedDimension = second
            .get_or_compute(&key(), || panic!("should come from disk"))
            .unwrap();
        assert_eq!(got, GradedDimension::concentrated(1, 2));
        assert_eq!(second.stats().disk_hits, 1);

        let path = second.path_for(&key().to_string()).unwrap();
        fs::write(&path, b"{not json").unwrap();
        let third = ResultCache::on_disk(dir.path()).unwrap();
        let got: GradedDimension = third
            .get_or_compute(&key(), || Ok(GradedDimension::concentrated(1, 2)))
            .unwrap();
        assert_eq!(got, GradedDimension::concentrated(1, 2));
        assert_eq!(third.stats().computed, 1);
        // overwritten with a valid entry
        let stored: StoredEntry = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        assert_eq!(stored.key, key().to_string());
    }

    #[test]
    fn schema_mismatch_recomputes() {
        let dir = tempfile::tempdir().unwrap();
        let c = ResultCache::on_disk(dir.path()).unwrap();
        let path = c.path_for(&key().to_string()).unwrap();
        let stale = StoredEntry {
            schema_version: "0".into(),
            key: key().to_string(),
            value: serde_json::to_value(GradedDimension::concentrated(0, 99)).unwrap(),
        };
        fs::write(&path, serde_json::to_vec(&stale).unwrap()).unwrap();
        let got: GradedDimension = c
            .get_or_compute(&key(), || Ok(GradedDimension::concentrated(0, 1)))
            .unwrap();
        assert_eq!(got, GradedDimension::concentrated(0, 1));
        assert_eq!(c.stats().computed, 1);
    }
}
