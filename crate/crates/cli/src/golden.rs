//! Golden-file comparison. Files live under `<dir>/v1/<command>/<name>.json`
//! and hold the JSON output without timing.

use std::fs;
use std::path::{Path, PathBuf};

pub const GOLDEN_VERSION: &str = "v1";

pub fn path(dir: &Path, command: &str, name: &str) -> PathBuf {
    dir.join(GOLDEN_VERSION)
        .join(command)
        .join(format!("{name}.json"))
}

pub enum Check {
    Match,
    Drift,
    Missing,
    Written,
}

/// Compares `json` with the golden file, or rewrites it when `update` is set.
pub fn check(
    dir: &Path,
    command: &str,
    name: &str,
    json: &str,
    update: bool,
) -> std::io::Result<Check> {
    let p = path(dir, command, name);
    if update {
        if let Some(parent) = p.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&p, json)?;
        return Ok(Check::Written);
    }
    match fs::read_to_string(&p) {
        Ok(want) if want == json => Ok(Check::Match),
        Ok(_) => {
            eprintln!("golden drift: {}", p.display());
            Ok(Check::Drift)
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            eprintln!("golden file missing: {}", p.display());
            Ok(Check::Missing)
        }
        Err(e) => Err(e),
    }
}
