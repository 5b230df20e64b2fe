//! Content-addressed store for embedding searches.
//!
//! A record lives at `<dir>/<sha256(key)>.json` and holds the key, the
//! serialized result and the digest of that serialization. Anything that does
//! not check out is reported, recomputed and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lenskit::lattice::{find_embeddings, form_from_string, LatticeEmbedding};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// A record was present but failed its checks.
    Corrupt,
    Disabled,
}

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    key: String,
    payload: String,
    digest: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn sha256(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

fn key_for(coefficients: &[i64]) -> String {
    let terms: Vec<String> = coefficients.iter().map(i64::to_string).collect();
    format!("embeddings:v1:{}", terms.join(","))
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    /// `$XDG_CACHE_HOME/lenskit`, falling back to `~/.cache/lenskit`.
    pub fn default_dir() -> Option<PathBuf> {
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))?;
        Some(base.join("lenskit"))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", sha256(key))))
    }

    fn load(&self, key: &str) -> (Option<Vec<LatticeEmbedding>>, Lookup) {
        let Some(path) = self.path(key) else {
            return (None, Lookup::Disabled);
        };
        let Ok(text) = fs::read_to_string(&path) else {
            return (None, Lookup::Miss);
        };
        let parsed =
            serde_json::from_str::<Record>(&text).ok().filter(|r| r.key == key && sha256(&r.payload) == r.digest);
        match parsed.and_then(|r| serde_json::from_str(&r.payload).ok()) {
            Some(v) => (Some(v), Lookup::Hit),
            None => {
                eprintln!("warning: discarding corrupt cache record {}", path.display());
                (None, Lookup::Corrupt)
            }
        }
    }

    fn store(&self, key: &str, value: &[LatticeEmbedding]) {
        let (Some(dir), Some(path)) = (&self.dir, self.path(key)) else {
            return;
        };
        let payload = serde_json::to_string(value).expect("embeddings serialize");
        let record = Record { key: key.to_string(), digest: sha256(&payload), payload };
        let text = serde_json::to_string(&record).expect("record serializes");
        // Write to a temporary name first so readers never see half a record.
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let written = fs::create_dir_all(dir)
            .and_then(|_| fs::File::create(&tmp))
            .and_then(|mut f| f.write_all(text.as_bytes()))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = written {
            let _ = fs::remove_file(&tmp);
            eprintln!("warning: could not write cache record {}: {e}", path.display());
        }
    }

    /// Embedding classes of the string, from the cache when a valid record exists.
    pub fn embeddings(&self, coefficients: &[i64]) -> lenskit::Result<(Vec<LatticeEmbedding>, Lookup)> {
        let form = form_from_string(coefficients)?;
        let key = key_for(coefficients);
        let (cached, status) = self.load(&key);
        if let Some(v) = cached {
            return Ok((v, status));
        }
        let v = find_embeddings(&form);
        self.store(&key, &v);
        Ok((v, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let s = [-2, -3, -2, -3, -3];
        let (a, st) = cache.embeddings(&s).unwrap();
        assert_eq!(st, Lookup::Miss);
        let (b, st) = cache.embeddings(&s).unwrap();
        assert_eq!(st, Lookup::Hit);
        assert_eq!(a, b);

        let path = cache.path(&key_for(&s)).unwrap();
        let text = fs::read_to_string(&path).unwrap().replacen("-1", "1", 1);
        fs::write(&path, text).unwrap();
        let (c, st) = cache.embeddings(&s).unwrap();
        assert_eq!(st, Lookup::Corrupt);
        assert_eq!(a, c);
        assert_eq!(cache.embeddings(&s).unwrap().1, Lookup::Hit);
    }

    #[test]
    fn disabled_always_misses() {
        let cache = Cache::disabled();
        assert_eq!(cache.embeddings(&[-2, -2, -2]).unwrap().1, Lookup::Disabled);
        assert_eq!(cache.embeddings(&[-2, -2, -2]).unwrap().1, Lookup::Disabled);
        assert!(cache.embeddings(&[0]).is_err());
    }
}
