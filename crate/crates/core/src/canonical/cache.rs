//! JSON-lines disk cache of canonical slices.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use parking_lot::Mutex;

use super::CanonicalSlice;
use crate::error::{Error, Result};

const FILE: &str = "canonical.jsonl";

/// A directory holding one slice per line in `canonical.jsonl`.
#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    lock: Mutex<()>,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into(), lock: Mutex::new(()) }
    }

    /// `$QFOLD_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os("QFOLD_CACHE").map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(FILE)
    }

    fn read_all(&self) -> Result<Vec<CanonicalSlice>> {
        let f = match fs::File::open(self.path()) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for line in BufReader::new(f).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            // a truncated trailing line from an interrupted write is skipped
            if let Ok(s) = serde_json::from_str(&line) {
                out.push(s);
            }
        }
        Ok(out)
    }

    pub fn get(&self, datum: &str, h: &[usize], weight: &[u32], modulus: Option<u8>) -> Result<Option<CanonicalSlice>> {
        let _g = self.lock.lock();
        Ok(self
            .read_all()?
            .into_iter()
            .find(|s| s.datum == datum && s.h == h && s.weight == weight && s.modulus == modulus))
    }

    pub fn put(&self, slice: &CanonicalSlice) -> Result<()> {
        let _g = self.lock.lock();
        fs::create_dir_all(&self.dir)?;
        let line = serde_json::to_string(slice).map_err(|e| Error::Io(e.to_string()))?;
        let mut f = OpenOptions::new().create(true).append(true).open(self.path())?;
        writeln!(f, "{line}")?;
        Ok(())
    }

    /// Keys of all cached slices, sorted.
    pub fn list(&self) -> Result<Vec<(String, Vec<usize>, Vec<u32>, Option<u8>)>> {
        let _g = self.lock.lock();
        let mut keys: Vec<_> = self.read_all()?.into_iter().map(|s| (s.datum, s.h, s.weight, s.modulus)).collect();
        keys.sort();
        keys.dedup();
        Ok(keys)
    }

    /// Removes the cache file; a missing file is not an error.
    pub fn clear(&self) -> Result<()> {
        let _g = self.lock.lock();
        match fs::remove_file(self.path()) {
            Ok(()) => Ok(()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(()),
            Err(e) => Err(e.into()),
        }
    }
}
