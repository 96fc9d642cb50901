//! Tiny parallelism shim.
//!
//! All data-parallel fan-out in the crate goes through [`map_collect`] so the
//! `parallel` feature can swap rayon in and out without touching call sites.
//! Results are collected in input order, so output is deterministic either
//! way. [`map_collect_seq`] is always available for differential benching.

#[cfg(feature = "parallel")]
use once_cell::sync::Lazy;

/// Sequential reference implementation (always compiled).
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U + Sync + Send,
    T: Send,
    U: Send,
{
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
static POOL: Lazy<rayon::ThreadPool> = Lazy::new(|| {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(s) = std::env::var("SHUFFLE_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            if n >= 1 {
                builder = builder.num_threads(n);
            }
        }
    }
    builder.build().expect("failed to build worker pool")
});

/// Map `f` over `items`, preserving order. Runs on the shared rayon pool
/// (capped by `SHUFFLE_THREADS`) when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U + Sync + Send,
    T: Send,
    U: Send,
{
    use rayon::prelude::*;
    POOL.install(|| items.into_par_iter().map(f).collect())
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U + Sync + Send,
    T: Send,
    U: Send,
{
    map_collect_seq(items, f)
}
