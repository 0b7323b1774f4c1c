//! Run manifests and result digests.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::cache::CACHE_VERSION;
use crate::error::Result;

/// Keys left out of the result digest.
const VOLATILE_KEYS: [&str; 3] = ["runtime_ms", "started_unix_ms", "finished_unix_ms"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub workers: usize,
    pub cache_version: u32,
    pub tool_version: String,
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
    /// SHA-256 of the canonical result JSON without volatile keys.
    pub result_digest: String,
}

/// A result together with the manifest that produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub manifest: RunManifest,
    pub result: T,
}

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

fn strip_volatile(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for k in VOLATILE_KEYS {
                map.remove(k);
            }
            map.values_mut().for_each(strip_volatile);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_volatile),
        _ => {}
    }
}

/// Hex SHA-256 of `result` serialized with sorted keys and volatile keys
/// removed.
pub fn result_digest<T: Serialize>(result: &T) -> Result<String> {
    let mut v = serde_json::to_value(result)?;
    strip_volatile(&mut v);
    let bytes = serde_json::to_vec(&v)?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}

impl RunManifest {
    /// Runs `f` and wraps its result with a manifest.
    pub fn run<T: Serialize>(
        command: &str,
        parameters: Value,
        seed: u64,
        workers: usize,
        f: impl FnOnce() -> Result<T>,
    ) -> Result<Envelope<T>> {
        let started = now_ms();
        let result = f()?;
        let finished = now_ms();
        let manifest = RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            workers,
            cache_version: CACHE_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix_ms: started,
            finished_unix_ms: finished,
            result_digest: result_digest(&result)?,
        };
        Ok(Envelope { manifest, result })
    }

    /// Manifests agree on everything but timing and worker count.
    pub fn same_run(&self, other: &RunManifest) -> bool {
        (&self.command, &self.parameters, self.seed, self.cache_version, &self.tool_version)
            == (&other.command, &other.parameters, other.seed, other.cache_version, &other.tool_version)
    }
}
