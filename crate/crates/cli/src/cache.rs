//! Version-stamped on-disk cache for graph exports. A cache file carries a
//! header with the crate version and an FNV-1a checksum of the payload;
//! any mismatch (stale version, truncation, corruption) falls back to a
//! rebuild that overwrites the file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.cache"))
}

fn header(payload: &str) -> String {
    format!(
        "cordial-cache v{} fnv64={:016x}\n",
        env!("CARGO_PKG_VERSION"),
        fnv1a64(payload.as_bytes())
    )
}

/// Returns the cached payload when the header validates.
pub fn read(dir: &Path, key: &str) -> Option<String> {
    let text = fs::read_to_string(cache_path(dir, key)).ok()?;
    let (first, payload) = text.split_once('\n')?;
    if format!("{first}\n") == header(payload) {
        Some(payload.to_string())
    } else {
        None
    }
}

/// Atomically writes a payload with its header; errors are swallowed since
/// the cache is best-effort.
pub fn write(dir: &Path, key: &str, payload: &str) {
    let _ = fs::create_dir_all(dir);
    let tmp = dir.join(format!(".{key}.tmp"));
    let write_all = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(header(payload).as_bytes())?;
        f.write_all(payload.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, cache_path(dir, key))?;
        Ok(())
    };
    if write_all().is_err() {
        let _ = fs::remove_file(&tmp);
    }
}
