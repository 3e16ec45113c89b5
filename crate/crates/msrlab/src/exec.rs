//! Execution strategy for the batch entry points.
//!
//! Corpus verification, the batch report, and search restarts are all
//! data-parallel with deterministic merges, so they accept an [`ExecMode`]
//! and produce identical output in either mode. The `parallel` cargo
//! feature (on by default) links rayon; without it every mode degrades to
//! sequential execution and the public API is unchanged.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How batch work is scheduled. Results never depend on the choice.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Cap the global worker pool. Effective once per process; later calls are
/// ignored. Reads like `MSRLAB_THREADS=4`. No-op without the `parallel`
/// feature or when `cap` is `None`.
pub fn init_threads(cap: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(threads) = cap {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cap;
}

/// Read the `MSRLAB_THREADS` environment variable.
pub fn thread_cap_from_env() -> Option<usize> {
    std::env::var("MSRLAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
}

/// Map `f` over `items`, preserving input order in the output.
pub fn map_collect<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().map(f).collect()
            }
        }
    }
}

/// First `Some` produced by `f` over `0..count`, by lowest index; parallel
/// execution still yields the lowest-index hit.
pub fn find_map_first<R, F>(mode: ExecMode, count: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..count).find_map(f),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..count).into_par_iter().find_map_first(f)
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..count).find_map(f)
            }
        }
    }
}
