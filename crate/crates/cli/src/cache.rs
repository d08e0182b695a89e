//! On-disk result cache keyed by command, parameters and code version.
//!
//! Each entry is `<key>.entry`: a header line `sha256:<hex>` followed by the
//! payload. Entries whose checksum does not match are recomputed. A
//! `<key>.lock` file created exclusively serializes population, and entries
//! are published by renaming a temporary file.

use std::fmt::Write as _;
use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

/// Bumped whenever a change alters any cached output.
pub const VERSION_TAG: &str = concat!("cubic-hecke-", env!("CARGO_PKG_VERSION"), "-c1");

const LOCK_WAIT: Duration = Duration::from_secs(3600);
const LOCK_POLL: Duration = Duration::from_millis(200);

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(2 * bytes.len());
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

fn sha256_hex(data: &[u8]) -> String {
    hex(&Sha256::digest(data))
}

/// What happened on a lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Hit,
    Computed,
    /// a corrupt entry was found and replaced
    Repaired,
    Disabled,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn key(command: &str, params: &str) -> String {
        sha256_hex(format!("{command}\n{params}\n{VERSION_TAG}").as_bytes())
    }

    #[cfg(test)]
    pub fn entry_path(&self, command: &str, params: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.entry", Self::key(command, params))))
    }

    /// Cached payload for `(command, params)`, computing and storing it on a
    /// miss.
    pub fn get_or_compute<F>(&self, command: &str, params: &str, compute: F) -> Result<(Vec<u8>, Outcome)>
    where
        F: FnOnce() -> Result<Vec<u8>>,
    {
        let Some(dir) = &self.dir else {
            return Ok((compute()?, Outcome::Disabled));
        };
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let key = Self::key(command, params);
        let entry = dir.join(format!("{key}.entry"));
        let mut corrupt = false;
        match read_entry(&entry)? {
            Some(Ok(payload)) => return Ok((payload, Outcome::Hit)),
            Some(Err(())) => corrupt = true,
            None => {}
        }
        let lock = Lock::acquire(&dir.join(format!("{key}.lock")))?;
        // another writer may have finished while we waited
        if let Some(Ok(payload)) = read_entry(&entry)? {
            drop(lock);
            return Ok((payload, Outcome::Hit));
        }
        let payload = compute()?;
        let tmp = dir.join(format!("{key}.tmp.{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp).with_context(|| format!("writing {}", tmp.display()))?;
            writeln!(f, "sha256:{}", sha256_hex(&payload))?;
            f.write_all(&payload)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &entry).with_context(|| format!("publishing {}", entry.display()))?;
        drop(lock);
        Ok((payload, if corrupt { Outcome::Repaired } else { Outcome::Computed }))
    }
}

/// `None` when absent, `Some(Err)` when the checksum fails.
fn read_entry(path: &Path) -> Result<Option<std::result::Result<Vec<u8>, ()>>> {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
    };
    let Some(nl) = bytes.iter().position(|&b| b == b'\n') else {
        return Ok(Some(Err(())));
    };
    let (header, payload) = (&bytes[..nl], &bytes[nl + 1..]);
    let expected = format!("sha256:{}", sha256_hex(payload));
    Ok(Some(if header == expected.as_bytes() { Ok(payload.to_vec()) } else { Err(()) }))
}

struct Lock {
    path: PathBuf,
}

impl Lock {
    fn acquire(path: &Path) -> Result<Self> {
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(path) {
                Ok(mut f) => {
                    let _ = writeln!(f, "{}", std::process::id());
                    return Ok(Self { path: path.to_path_buf() });
                }
                Err(e) if e.kind() == ErrorKind::AlreadyExists => {
                    if start.elapsed() > LOCK_WAIT {
                        bail!("cache lock {} held for over an hour; remove it if stale", path.display());
                    }
                    std::thread::sleep(LOCK_POLL);
                }
                Err(e) => return Err(e).with_context(|| format!("creating lock {}", path.display())),
            }
        }
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_after_compute_and_repair_after_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let (a, o) = cache.get_or_compute("cmd", "p=1", || Ok(b"payload".to_vec())).unwrap();
        assert_eq!((a.as_slice(), o), (&b"payload"[..], Outcome::Computed));
        let (b, o) = cache.get_or_compute("cmd", "p=1", || panic!("must not recompute")).unwrap();
        assert_eq!((b, o), (a.clone(), Outcome::Hit));

        let path = cache.entry_path("cmd", "p=1").unwrap();
        let mut bytes = fs::read(&path).unwrap();
        *bytes.last_mut().unwrap() ^= 1;
        fs::write(&path, bytes).unwrap();
        let (c, o) = cache.get_or_compute("cmd", "p=1", || Ok(b"payload".to_vec())).unwrap();
        assert_eq!((c, o), (a, Outcome::Repaired));
        assert!(!dir.path().join(format!("{}.lock", Cache::key("cmd", "p=1"))).exists());
    }

    #[test]
    fn keys_separate_commands_and_parameters() {
        assert_ne!(Cache::key("a", "x"), Cache::key("a", "y"));
        assert_ne!(Cache::key("a", "x"), Cache::key("b", "x"));
        assert_eq!(Cache::key("a", "x").len(), 64);
    }
}
