//! On-disk cache of duality reports.
//!
//! The key hashes the command, its parameters, the crate version, and the
//! output of the inequality and generator builders, so any change to those
//! formulas misses the cache.

use conekit::blowup::{ck_generators, dk_halfspaces, DualityReport};
use conekit::Result;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

pub fn duality_key(n: usize, s: usize, k: usize) -> Result<String> {
    let mut h = Sha256::new();
    h.update(format!(
        "duality n={n} s={s} k={k} v{}\n",
        env!("CARGO_PKG_VERSION")
    ));
    for row in dk_halfspaces(n, s, k)? {
        h.update(format!(
            "{} {}\n",
            row.label.unwrap_or_default(),
            row.normal
        ));
    }
    for g in ck_generators(n, s, k)? {
        h.update(format!("{} {}\n", g.family, g.class));
    }
    Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

fn entry(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// A cached report, or `None` on a miss. Unreadable or mismatched entries
/// are reported and treated as misses.
pub fn load(dir: &Path, key: &str, n: usize, s: usize, k: usize) -> Option<DualityReport> {
    let path = entry(dir, key);
    let text = fs::read_to_string(&path).ok()?;
    match serde_json::from_str::<DualityReport>(&text) {
        Ok(r) if (r.n, r.s, r.k) == (n, s, k) => Some(r),
        Ok(_) => {
            log::warn!(
                "cache entry {} is for other parameters; recomputing",
                path.display()
            );
            None
        }
        Err(e) => {
            log::warn!(
                "corrupted cache entry {} ({e}); recomputing",
                path.display()
            );
            None
        }
    }
}

/// Writes through a temporary file so readers never see a partial entry.
pub fn store(dir: &Path, key: &str, report: &DualityReport) {
    let write = || -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(
            &tmp,
            serde_json::to_string(report).expect("report serializes"),
        )?;
        fs::rename(&tmp, entry(dir, key))
    };
    if let Err(e) = write() {
        log::warn!("could not write cache entry in {}: {e}", dir.display());
    }
}
