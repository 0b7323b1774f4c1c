//! Experiment plumbing: table cache, run manifests and worker pools.

pub mod cache;
pub mod decimal;
pub mod manifest;

pub use cache::{TableCache, CACHE_VERSION};
pub use manifest::{result_digest, Envelope, RunManifest};

use crate::error::{Error, Result};

/// Runs `f` on a dedicated rayon pool with `workers` threads; `0` means
/// the rayon default.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}
