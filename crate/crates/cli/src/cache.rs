//! On-disk cache of character tables keyed by canonical group hash and
//! prime. Entries are re-verified on load; anything unreadable or
//! inconsistent is recomputed, so the cache never changes a result.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use bohrcheck_core::character::{CharacterTable, TableData};
use bohrcheck_core::group::FiniteGroup;
use serde::Serialize;

pub const CACHE_DIR_ENV: &str = "BOHRCHECK_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub group_hash: String,
    pub order: usize,
    pub prime: u64,
    pub classes: usize,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str, prime: u64) -> PathBuf {
        self.dir.join(format!("{hash}-p{prime}.json"))
    }

    fn read(&self, group: &Arc<FiniteGroup>, prime: u64) -> Option<CharacterTable> {
        let text = fs::read_to_string(self.path(&group.canonical_hash(), prime)).ok()?;
        let data: TableData = serde_json::from_str(&text).ok()?;
        if data.prime != prime {
            return None;
        }
        CharacterTable::from_data(group.clone(), &data).ok()
    }

    pub fn store(&self, table: &CharacterTable) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let data = table.to_data();
        let path = self.path(&data.group_hash, data.prime);
        fs::write(&path, serde_json::to_string(&data)?).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }

    /// Table of `group` over `prime` (the group's own default when `None`),
    /// read from the cache or computed and stored.
    pub fn table(&self, group: &Arc<FiniteGroup>, prime: Option<u64>) -> Result<CharacterTable> {
        let prime = match prime {
            Some(p) => p,
            None => bohrcheck_core::character::shared_prime(&[group.as_ref()])?,
        };
        if let Some(t) = self.read(group, prime) {
            return Ok(t);
        }
        let table = CharacterTable::with_prime(group.clone(), prime)?;
        // a read-only or missing cache directory only costs the speedup
        let _ = self.store(&table);
        Ok(table)
    }

    pub fn entries(&self) -> Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        let listing = match fs::read_dir(&self.dir) {
            Ok(l) => l,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e).with_context(|| format!("listing {}", self.dir.display())),
        };
        for entry in listing {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let Ok(data) = fs::read_to_string(&path)
                .map_err(anyhow::Error::from)
                .and_then(|t| Ok(serde_json::from_str::<TableData>(&t)?))
            else {
                continue;
            };
            let order = data.group_hash.split('-').next().and_then(|o| o.parse().ok()).unwrap_or(0);
            out.push(CacheEntry {
                file: path.file_name().unwrap_or_default().to_string_lossy().into_owned(),
                group_hash: data.group_hash,
                order,
                prime: data.prime,
                classes: data.degrees.len(),
            });
        }
        out.sort_by(|a, b| (a.order, &a.group_hash, a.prime).cmp(&(b.order, &b.group_hash, b.prime)));
        Ok(out)
    }

    /// Removes cached tables; returns how many files were deleted.
    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        for e in self.entries()? {
            fs::remove_file(self.dir.join(&e.file))?;
            removed += 1;
        }
        Ok(removed)
    }
}

/// Computes tables directly or through a cache.
pub fn table(cache: Option<&TableCache>, group: &Arc<FiniteGroup>, prime: Option<u64>) -> Result<CharacterTable> {
    match cache {
        Some(c) => c.table(group, prime),
        None => {
            let prime = match prime {
                Some(p) => p,
                None => bohrcheck_core::character::shared_prime(&[group.as_ref()])?,
            };
            Ok(CharacterTable::with_prime(group.clone(), prime)?)
        }
    }
}
