//! On-disk cache of character tables.
//!
//! Each table is stored as `{sn,an}_<n>.json` holding the format version,
//! the SHA-256 of the canonical table JSON and the table itself. Files with
//! a different version, a digest mismatch or unparsable content are
//! rejected and rebuilt.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::an::{build_an_table, AnTable};
use crate::error::{Error, Result};
use crate::sn::{build_sn_table, SnTable};

/// Bump whenever the serialized table layout changes.
pub const CACHE_VERSION: u32 = 1;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "MCKAY_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Stored {
    version: u32,
    family: String,
    n: u32,
    sha256: String,
    table: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Hit,
    Built,
    /// A stale or corrupt entry was replaced.
    Rebuilt,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
    paranoid: bool,
    version: u32,
}

fn digest(v: &Value) -> Result<String> {
    Ok(format!("{:x}", Sha256::digest(serde_json::to_vec(v)?)))
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into(), paranoid: false, version: CACHE_VERSION }
    }

    /// Cache in `$MCKAY_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Self::new)
    }

    /// Re-run the orthogonality checks on every load.
    pub fn paranoid(mut self, on: bool) -> Self {
        self.paranoid = on;
        self
    }

    /// Overrides the format version written and accepted.
    pub fn with_version(mut self, version: u32) -> Self {
        self.version = version;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, family: &str, n: u32) -> PathBuf {
        self.dir.join(format!("{family}_{n}.json"))
    }

    fn store<T: Serialize>(&self, family: &str, n: u32, table: &T) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let table = serde_json::to_value(table)?;
        let stored = Stored { version: self.version, family: family.into(), n, sha256: digest(&table)?, table };
        let path = self.path(family, n);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&stored)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` when no file exists; `Err(Error::Cache)` when it is stale
    /// or corrupt; `Err(Error::Io)` for read failures.
    fn load<T: DeserializeOwned>(&self, family: &str, n: u32) -> Result<Option<T>> {
        let path = self.path(family, n);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let bad = |why: String| Error::Cache(format!("{}: {why}", path.display()));
        let stored: Stored = serde_json::from_slice(&bytes).map_err(|e| bad(format!("unreadable: {e}")))?;
        if stored.version != self.version {
            return Err(bad(format!("version {} != {}", stored.version, self.version)));
        }
        if stored.family != family || stored.n != n {
            return Err(bad(format!("holds {}_{}", stored.family, stored.n)));
        }
        if digest(&stored.table)? != stored.sha256 {
            return Err(bad("digest mismatch".into()));
        }
        let table = serde_json::from_value(stored.table).map_err(|e| bad(format!("bad table: {e}")))?;
        Ok(Some(table))
    }

    fn get<T, B, V>(&self, family: &str, n: u32, build: B, validate: V) -> Result<(T, Outcome)>
    where
        T: Serialize + DeserializeOwned,
        B: Fn(u32) -> Result<T>,
        V: Fn(&T) -> Result<()>,
    {
        let stale = match self.load::<T>(family, n) {
            Ok(Some(t)) => match (self.paranoid, validate(&t)) {
                (true, Err(_)) => true,
                _ => return Ok((t, Outcome::Hit)),
            },
            Ok(None) => false,
            Err(Error::Cache(_)) => true,
            Err(e) => return Err(e),
        };
        let t = build(n)?;
        self.store(family, n, &t)?;
        Ok((t, if stale { Outcome::Rebuilt } else { Outcome::Built }))
    }

    pub fn sn_table(&self, n: u32) -> Result<(SnTable, Outcome)> {
        self.get("sn", n, build_sn_table, SnTable::validate)
    }

    pub fn an_table(&self, n: u32) -> Result<(AnTable, Outcome)> {
        self.get("an", n, build_an_table, AnTable::validate)
    }
}
