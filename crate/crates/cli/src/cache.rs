//! Content-addressed result cache.
//!
//! Each entry is `<dir>/<command>/<digest>.json` holding a [`RunRecord`].
//! The digest covers the command, its canonical inputs and the engine
//! version, so a version bump never reuses old entries.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use pebblelab::ENGINE_VERSION;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub digest: String,
    pub engine_version: String,
    pub exit_code: i32,
    pub wall_time_ms: u64,
    pub result: serde_json::Value,
}

/// Hex SHA-256 over the command, engine version and each input part.
pub fn digest(command: &str, parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for field in [command, ENGINE_VERSION].iter().chain(parts) {
        h.update((field.len() as u64).to_le_bytes());
        h.update(field.as_bytes());
    }
    hex::encode(h.finalize())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    fn path(&self, command: &str, digest: &str) -> PathBuf {
        self.dir.join(command).join(format!("{digest}.json"))
    }

    /// A matching record, or `None` on a miss or an unreadable entry.
    pub fn get(&self, command: &str, digest: &str) -> Option<RunRecord> {
        let text = fs::read_to_string(self.path(command, digest)).ok()?;
        let rec: RunRecord = serde_json::from_str(&text).ok()?;
        (rec.engine_version == ENGINE_VERSION && rec.digest == digest && rec.command == command)
            .then_some(rec)
    }

    /// Writes to a temporary file in the same directory, then renames.
    pub fn put(&self, rec: &RunRecord) -> io::Result<()> {
        let target = self.path(&rec.command, &rec.digest);
        let parent = target.parent().expect("entry paths have a parent");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(".{}.{}.tmp", rec.digest, std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(rec)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)
    }

    /// Removes stale temp files, unreadable entries and entries from other
    /// engine versions. Returns `(kept, removed)`.
    pub fn gc(&self) -> io::Result<(usize, usize)> {
        let (mut kept, mut removed) = (0, 0);
        if !self.dir.exists() {
            return Ok((0, 0));
        }
        for sub in fs::read_dir(&self.dir)? {
            let sub = sub?.path();
            if !sub.is_dir() {
                continue;
            }
            for entry in fs::read_dir(&sub)? {
                let path = entry?.path();
                if keep(&path) {
                    kept += 1;
                } else {
                    fs::remove_file(&path)?;
                    removed += 1;
                }
            }
        }
        Ok((kept, removed))
    }
}

fn keep(path: &Path) -> bool {
    if path.extension().and_then(|e| e.to_str()) != Some("json") {
        return false;
    }
    let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
        return false;
    };
    fs::read_to_string(path)
        .ok()
        .and_then(|t| serde_json::from_str::<RunRecord>(&t).ok())
        .is_some_and(|r| r.engine_version == ENGINE_VERSION && r.digest == stem)
}
