//! On-disk cache of relation bases and an in-process store in front of it.
//!
//! Entries are keyed by degree, the 1-term flag and the generator tag. An
//! entry written by a different generator version, or one that fails to parse,
//! is ignored and rebuilt.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, rational_to_string, RelationBasis, GENERATOR_TAG};
use crate::diagram::{enumerate_diagrams_with_limit, ChordDiagram, DEFAULT_DEGREE_LIMIT};
use crate::error::Result;
use crate::linalg::SparseRow;

/// Environment variable consulted when no cache directory is given.
pub const CACHE_ENV: &str = "LOOPCHORD_CACHE";

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CacheEntry {
    generator_tag: String,
    degree: usize,
    with_1t: bool,
    columns: Vec<ChordDiagram>,
    rows: Vec<Vec<(usize, String)>>,
}

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    /// Uses `dir` if given, otherwise `LOOPCHORD_CACHE`, otherwise no cache.
    pub fn from_option_or_env(dir: Option<&Path>) -> Option<Self> {
        match dir {
            Some(d) => Some(BasisCache::new(d)),
            None => std::env::var_os(CACHE_ENV)
                .filter(|v| !v.is_empty())
                .map(BasisCache::new),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, degree: usize, with_1t: bool) -> PathBuf {
        let kind = if with_1t { "1t4t" } else { "4t" };
        self.dir
            .join(format!("basis-n{degree}-{kind}-{GENERATOR_TAG}.json"))
    }

    /// Reads a cached basis. Missing, stale or unreadable entries give `None`.
    pub fn load(&self, degree: usize, with_1t: bool, limit: usize) -> Option<RelationBasis> {
        let text = fs::read_to_string(self.entry_path(degree, with_1t)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.generator_tag != GENERATOR_TAG
            || entry.degree != degree
            || entry.with_1t != with_1t
        {
            return None;
        }
        let columns = enumerate_diagrams_with_limit(degree, limit).ok()?;
        if columns != entry.columns {
            return None;
        }
        let mut rows = Vec::with_capacity(entry.rows.len());
        for r in entry.rows {
            let mut row: SparseRow = Vec::with_capacity(r.len());
            for (c, q) in r {
                if c >= columns.len() {
                    return None;
                }
                row.push((c, parse_rational(&q).ok()?));
            }
            rows.push(row);
        }
        Some(RelationBasis::from_parts(degree, with_1t, columns, rows))
    }

    /// Writes `basis` through a temporary file so readers never see a partial entry.
    pub fn store(&self, basis: &RelationBasis) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            generator_tag: GENERATOR_TAG.to_string(),
            degree: basis.degree(),
            with_1t: basis.with_1t(),
            columns: basis.columns().to_vec(),
            rows: basis
                .sparse_rows()
                .into_iter()
                .map(|r| r.iter().map(|(c, q)| (*c, rational_to_string(q))).collect())
                .collect(),
        };
        let path = self.entry_path(basis.degree(), basis.with_1t());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// Degree limit, optional disk cache and the bases built so far.
#[derive(Debug)]
pub struct Workspace {
    limit: usize,
    cache: Option<BasisCache>,
    bases: Mutex<HashMap<(usize, bool), Arc<RelationBasis>>>,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace::new(DEFAULT_DEGREE_LIMIT, None)
    }
}

impl Workspace {
    pub fn new(limit: usize, cache: Option<BasisCache>) -> Self {
        Workspace {
            limit,
            cache,
            bases: Mutex::new(HashMap::new()),
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn cache(&self) -> Option<&BasisCache> {
        self.cache.as_ref()
    }

    /// The relation basis in degree `n`, from memory, disk or a fresh build.
    pub fn basis(&self, n: usize, with_1t: bool) -> Result<Arc<RelationBasis>> {
        if let Some(b) = self.bases.lock().unwrap().get(&(n, with_1t)) {
            return Ok(b.clone());
        }
        let loaded = self
            .cache
            .as_ref()
            .and_then(|c| c.load(n, with_1t, self.limit));
        let basis = match loaded {
            Some(b) => b,
            None => {
                let b = RelationBasis::build(n, with_1t, self.limit)?;
                if let Some(c) = &self.cache {
                    c.store(&b)?;
                }
                b
            }
        };
        let basis = Arc::new(basis);
        self.bases
            .lock()
            .unwrap()
            .entry((n, with_1t))
            .or_insert(basis.clone());
        Ok(basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        assert!(cache.load(4, true, 8).is_none());
        let built = RelationBasis::build(4, true, 8).unwrap();
        cache.store(&built).unwrap();
        let loaded = cache.load(4, true, 8).unwrap();
        assert_eq!(loaded.quotient_dim(), 3);
        assert_eq!(loaded.rows(), built.rows());
        assert!(cache.load(4, false, 8).is_none());
    }

    #[test]
    fn stale_and_corrupt_entries_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let built = RelationBasis::build(3, false, 8).unwrap();
        cache.store(&built).unwrap();
        let path = cache.entry_path(3, false);
        let text = fs::read_to_string(&path)
            .unwrap()
            .replace(GENERATOR_TAG, "older-generator");
        fs::write(&path, text).unwrap();
        assert!(cache.load(3, false, 8).is_none());
        fs::write(&path, "{not json").unwrap();
        assert!(cache.load(3, false, 8).is_none());
        let ws = Workspace::new(8, Some(cache.clone()));
        assert_eq!(
            ws.basis(3, false).unwrap().quotient_dim(),
            built.quotient_dim()
        );
        assert!(cache.load(3, false, 8).is_some());
    }

    #[test]
    fn workspace_reuses_bases() {
        let ws = Workspace::default();
        let a = ws.basis(4, true).unwrap();
        let b = ws.basis(4, true).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(ws.basis(9, true).is_err());
    }
}
