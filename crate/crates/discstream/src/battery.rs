//! Parallel trial batteries. Trial `t` always gets seed
//! `derive_seed(master, t)` and results come back in trial order, so the
//! output does not depend on the thread count.

use discstream_core::derive_seed;
use rayon::prelude::*;

/// Runs `f(trial, seed)` for every trial in `0..trials`.
pub fn run<T, F>(trials: u64, master: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| f(t, derive_seed(master, t)))
        .collect()
}

/// Like [`run`], stopping at the first error (in trial order).
pub fn try_run<T, E, F>(trials: u64, master: u64, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(u64, u64) -> Result<T, E> + Sync,
{
    run(trials, master, f).into_iter().collect()
}

/// Runs `op` on a pool with `threads` workers (0 means the rayon default).
pub fn with_threads<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}
