//! On-disk report cache keyed by the SHA-256 of the sorted vertex list.
//!
//! The key is the literal vertex list: translates or unimodular images of a
//! polytope are different keys.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use polynorm::{InvariantReport, Polytope};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub tool_version: String,
    pub report: InvariantReport,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn key(p: &Polytope) -> String {
        let canonical = serde_json::to_vec(p.vertices()).expect("integer vectors serialize");
        hex::encode(Sha256::digest(&canonical))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A cached report for `p` written by this tool version, renamed to `name`.
    /// Unreadable or stale entries count as misses.
    pub fn load(&self, p: &Polytope, name: &str) -> Option<InvariantReport> {
        let key = Self::key(p);
        let data = fs::read(self.path(&key)).ok()?;
        let entry: CacheEntry = serde_json::from_slice(&data).ok()?;
        if entry.tool_version != TOOL_VERSION || entry.key != key {
            return None;
        }
        let mut report = entry.report;
        report.name = name.to_string();
        Some(report)
    }

    pub fn store(&self, p: &Polytope, report: &InvariantReport) -> Result<()> {
        let key = Self::key(p);
        let entry = CacheEntry {
            key: key.clone(),
            tool_version: TOOL_VERSION.to_string(),
            report: report.clone(),
        };
        let path = self.path(&key);
        let tmp = self.dir.join(format!("{key}.json.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}
