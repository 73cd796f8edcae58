//! Append-only JSON-lines record of partitions a sweep has finished.
//!
//! One line per completed `α`, keyed by `(tool version, d, α, checks)`. A run
//! killed mid-write can leave a final line without its newline; that line is
//! ignored on load and cut off before the next append. Any other unparseable
//! line is corruption.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use csm_core::Partition;
use serde::{Deserialize, Serialize};

use crate::serde_util;
use crate::verify::{CheckSet, SweepReport};
use crate::TOOL_VERSION;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "CSM_CACHE_DIR";
pub const CACHE_FILE: &str = "sweep-cache.jsonl";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o error at {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt cache record at {path}:{line}: {record}")]
    Corrupt { path: PathBuf, line: usize, record: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Record {
    version: String,
    d: usize,
    #[serde(with = "serde_util::partition")]
    alpha: Partition,
    checks: CheckSet,
    report: SweepReport,
}

#[derive(Debug)]
pub struct SweepCache {
    path: PathBuf,
    records: Vec<Record>,
    file: Option<File>,
}

/// `$CSM_CACHE_DIR`, or `.csm-cache` in the working directory.
pub fn default_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".csm-cache"))
}

impl SweepCache {
    /// Loads `dir/sweep-cache.jsonl`, creating nothing until the first write.
    pub fn open(dir: &Path) -> Result<Self, CacheError> {
        let path = dir.join(CACHE_FILE);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => String::new(),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let mut records = Vec::new();
        let lines: Vec<&str> = text.split_inclusive('\n').collect();
        for (i, raw) in lines.iter().enumerate() {
            let complete = raw.ends_with('\n');
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            match serde_json::from_str::<Record>(line) {
                Ok(r) => records.push(r),
                Err(_) if !complete && i + 1 == lines.len() => {}
                Err(_) => return Err(CacheError::Corrupt { path, line: i + 1, record: line.to_string() }),
            }
        }
        Ok(SweepCache { path, records, file: None })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Per-`α` reports recorded by this tool version for `(d, checks)`.
    pub fn completed(&self, d: usize, checks: &CheckSet) -> BTreeMap<Partition, SweepReport> {
        self.records
            .iter()
            .filter(|r| r.version == TOOL_VERSION && r.d == d && &r.checks == checks)
            .map(|r| (r.alpha.clone(), r.report.clone()))
            .collect()
    }

    pub fn record(&mut self, d: usize, checks: &CheckSet, alpha: &Partition, report: &SweepReport) -> Result<(), CacheError> {
        let record = Record {
            version: TOOL_VERSION.to_string(),
            d,
            alpha: alpha.clone(),
            checks: checks.clone(),
            report: report.clone(),
        };
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CacheError::Io { path, source }
        };
        if self.file.is_none() {
            if let Some(dir) = self.path.parent() {
                fs::create_dir_all(dir).map_err(io_err(&self.path))?;
            }
            // Drop a torn last line so the new record starts on a fresh line.
            let existing = match fs::read(&self.path) {
                Ok(bytes) => bytes,
                Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
                Err(e) => return Err(io_err(&self.path)(e)),
            };
            if !existing.is_empty() && !existing.ends_with(b"\n") {
                let keep = existing.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
                let file = OpenOptions::new().write(true).open(&self.path).map_err(io_err(&self.path))?;
                file.set_len(keep as u64).map_err(io_err(&self.path))?;
            }
            let file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io_err(&self.path))?;
            self.file = Some(file);
        }
        let mut line = serde_json::to_string(&record).expect("record serializes");
        line.push('\n');
        let file = self.file.as_mut().expect("opened above");
        file.write_all(line.as_bytes()).and_then(|_| file.flush()).map_err(io_err(&self.path))?;
        self.records.push(record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{all_checks, check_invariants};

    #[test]
    fn round_trip_and_keying() {
        let dir = tempfile::tempdir().unwrap();
        let checks = all_checks();
        let alpha: Partition = "2,1".parse().unwrap();
        let report = check_invariants(&alpha, &checks);
        {
            let mut cache = SweepCache::open(dir.path()).unwrap();
            cache.record(2, &checks, &alpha, &report).unwrap();
        }
        let cache = SweepCache::open(dir.path()).unwrap();
        assert_eq!(cache.completed(2, &checks).get(&alpha), Some(&report));
        assert!(cache.completed(3, &checks).is_empty());
        let fewer: CheckSet = [crate::Check::Positivity].into_iter().collect();
        assert!(cache.completed(2, &fewer).is_empty());
    }

    #[test]
    fn torn_tail_is_ignored_but_garbage_is_not() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(CACHE_FILE);
        fs::write(&path, "{\"version\":").unwrap();
        assert!(SweepCache::open(dir.path()).unwrap().completed(1, &all_checks()).is_empty());

        fs::write(&path, "not json\n").unwrap();
        match SweepCache::open(dir.path()) {
            Err(CacheError::Corrupt { line, record, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(record, "not json");
            }
            other => panic!("expected corruption, got {other:?}"),
        }
    }

    #[test]
    fn writing_after_torn_tail() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(CACHE_FILE);
        fs::write(&path, "{\"version\":").unwrap();
        let checks = all_checks();
        let alpha: Partition = "1".parse().unwrap();
        let report = check_invariants(&alpha, &checks);
        SweepCache::open(dir.path()).unwrap().record(1, &checks, &alpha, &report).unwrap();
        let reloaded = SweepCache::open(dir.path()).unwrap();
        assert_eq!(reloaded.completed(1, &checks).get(&alpha), Some(&report));
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 1);
    }
}
