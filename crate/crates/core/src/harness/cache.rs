//! A JSON-lines result cache, keyed by tool version, graph, computation and
//! parameters. Cached hits are re-derived on a seeded sample and compared.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fs::OpenOptions;
use std::hash::{Hash, Hasher};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::report::TOOL_VERSION;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CACHE_DIR_ENV: &str = "GRAPHDEPTH_CACHE_DIR";
pub const CACHE_FILE: &str = "results.jsonl";

#[derive(Serialize, Deserialize)]
struct Line {
    key: String,
    value: Value,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub spot_checks: u64,
}

#[derive(Default)]
struct State {
    entries: HashMap<String, Value>,
    pending: Vec<(String, Value)>,
    stats: CacheStats,
}

pub struct ResultCache {
    file: Option<PathBuf>,
    seed: u64,
    spot_check_rate: f64,
    state: Mutex<State>,
}

impl ResultCache {
    /// A cache that lives only as long as the process.
    pub fn in_memory(seed: u64) -> Self {
        ResultCache {
            file: None,
            seed,
            spot_check_rate: 0.05,
            state: Mutex::new(State::default()),
        }
    }

    /// Loads `dir/results.jsonl` (creating `dir` if needed). Lines that do
    /// not parse are ignored.
    pub fn open(dir: &Path, seed: u64) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        let file = dir.join(CACHE_FILE);
        let mut entries = HashMap::new();
        if file.exists() {
            let reader = BufReader::new(std::fs::File::open(&file)?);
            for line in reader.lines() {
                if let Ok(l) = serde_json::from_str::<Line>(&line?) {
                    entries.insert(l.key, l.value);
                }
            }
        }
        Ok(ResultCache {
            file: Some(file),
            seed,
            spot_check_rate: 0.05,
            state: Mutex::new(State {
                entries,
                ..State::default()
            }),
        })
    }

    /// Uses the directory named by `GRAPHDEPTH_CACHE_DIR`, or memory only.
    pub fn from_env(seed: u64) -> Result<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => ResultCache::open(Path::new(&dir), seed),
            _ => Ok(ResultCache::in_memory(seed)),
        }
    }

    pub fn with_spot_check_rate(mut self, rate: f64) -> Self {
        self.spot_check_rate = rate.clamp(0.0, 1.0);
        self
    }

    pub fn stats(&self) -> CacheStats {
        self.state.lock().expect("cache lock").stats
    }

    fn key(g: &Graph, computation: &str, params: &str) -> String {
        format!("{TOOL_VERSION}|{}|{computation}|{params}", g.canonical_string())
    }

    fn spot_check(&self, key: &str) -> bool {
        let mut h = DefaultHasher::new();
        key.hash(&mut h);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ h.finish());
        rng.gen_bool(self.spot_check_rate)
    }

    /// The cached value for the key, or `compute()` (which is then stored).
    /// Errors from `compute` are not cached. A sampled hit is recomputed and
    /// a mismatch is an `Inconsistent` error.
    pub fn get_or_compute<T, F>(&self, g: &Graph, computation: &str, params: &str, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned + PartialEq,
        F: FnOnce() -> Result<T>,
    {
        let key = Self::key(g, computation, params);
        let cached = {
            let st = self.state.lock().expect("cache lock");
            st.entries.get(&key).cloned()
        };
        if let Some(v) = cached.and_then(|v| serde_json::from_value::<T>(v).ok()) {
            let check = self.spot_check(&key);
            {
                let mut st = self.state.lock().expect("cache lock");
                st.stats.hits += 1;
                st.stats.spot_checks += u64::from(check);
            }
            if check && compute()? != v {
                return Err(Error::Inconsistent(format!("cached value for `{key}` differs from recomputation")));
            }
            return Ok(v);
        }
        let v = compute()?;
        let json = serde_json::to_value(&v).expect("cache values serialize");
        let mut st = self.state.lock().expect("cache lock");
        st.stats.misses += 1;
        st.entries.insert(key.clone(), json.clone());
        st.pending.push((key, json));
        Ok(v)
    }

    /// Appends new entries to the cache file, if there is one.
    pub fn flush(&self) -> Result<()> {
        let Some(file) = &self.file else {
            return Ok(());
        };
        let mut st = self.state.lock().expect("cache lock");
        if st.pending.is_empty() {
            return Ok(());
        }
        let mut pending = std::mem::take(&mut st.pending);
        pending.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = OpenOptions::new().create(true).append(true).open(file)?;
        for (key, value) in pending {
            let line = serde_json::to_string(&Line { key, value }).expect("cache line serializes");
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

impl Drop for ResultCache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_and_reloads() {
        let dir = std::env::temp_dir().join(format!("graphdepth-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let g = Graph::path(3).unwrap();
        {
            let c = ResultCache::open(&dir, 1).unwrap();
            let v: usize = c.get_or_compute(&g, "nu", "", || Ok(1)).unwrap();
            assert_eq!(v, 1);
            assert_eq!(c.stats().misses, 1);
        }
        let c = ResultCache::open(&dir, 1).unwrap().with_spot_check_rate(0.0);
        let v: usize = c.get_or_compute(&g, "nu", "", || panic!("should be cached")).unwrap();
        assert_eq!(v, 1);
        assert_eq!(c.stats().hits, 1);
        drop(c);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn spot_check_catches_stale_values() {
        let c = ResultCache::in_memory(5).with_spot_check_rate(1.0);
        let g = Graph::path(2).unwrap();
        let _: u32 = c.get_or_compute(&g, "x", "k=1", || Ok(3)).unwrap();
        let ok: u32 = c.get_or_compute(&g, "x", "k=1", || Ok(3)).unwrap();
        assert_eq!(ok, 3);
        let err = c.get_or_compute::<u32, _>(&g, "x", "k=1", || Ok(4)).unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)));
        assert_eq!(c.stats().spot_checks, 2);
    }
}
