use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::classes::{neighbor_class_set, GenusClassSet};
use crate::error::{Error, Result};
use crate::forms::TernaryForm;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "QUADSUM_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
}

/// Content address of a closure: library version, seed literal and primes.
pub fn cache_key(seed: &TernaryForm, primes: &[i64]) -> String {
    let mut h = Sha256::new();
    h.update(crate::VERSION.as_bytes());
    h.update(b"\0");
    h.update(seed.to_string().as_bytes());
    for p in primes {
        h.update(b"\0");
        h.update(p.to_string().as_bytes());
    }
    hex::encode(h.finalize())
}

fn path_for(dir: &Path, seed: &TernaryForm, primes: &[i64]) -> PathBuf {
    dir.join(format!("genus-{}.json", cache_key(seed, primes)))
}

/// `neighbor_class_set` through a directory of JSON files; misses are
/// computed and written via a temporary file renamed into place.
pub fn cached_neighbor_class_set(
    dir: &Path,
    seed: &TernaryForm,
    primes: &[i64],
) -> Result<(GenusClassSet, CacheStatus)> {
    let path = path_for(dir, seed, primes);
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(cs) = serde_json::from_slice::<GenusClassSet>(&bytes) {
            return Ok((cs, CacheStatus::Hit));
        }
    }
    let cs = neighbor_class_set(seed, primes)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(&serde_json::to_vec_pretty(&cs)?).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(&path).map_err(|e| Error::io(&path, e.error))?;
    Ok((cs, CacheStatus::Miss))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_depends_on_inputs() {
        let a: TernaryForm = "diag(3,3,5)".parse().unwrap();
        let b: TernaryForm = "diag(1,5,6)".parse().unwrap();
        assert_eq!(cache_key(&a, &[7, 11]), cache_key(&a, &[7, 11]));
        assert_ne!(cache_key(&a, &[7, 11]), cache_key(&a, &[7, 13]));
        assert_ne!(cache_key(&a, &[7, 11]), cache_key(&b, &[7, 11]));
        assert_eq!(cache_key(&a, &[7]).len(), 64);
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let seed: TernaryForm = "diag(1,7,7)".parse().unwrap();
        let (first, s1) = cached_neighbor_class_set(dir.path(), &seed, &[3, 5]).unwrap();
        let (second, s2) = cached_neighbor_class_set(dir.path(), &seed, &[3, 5]).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Miss, CacheStatus::Hit));
        assert_eq!(first, second);
        let files = fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(files, 1);
    }
}
