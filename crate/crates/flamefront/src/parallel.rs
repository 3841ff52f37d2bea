//! Data-parallel map over independent work items (sweep points, seeds).
//!
//! With the `parallel` feature (on by default) the map runs on the rayon
//! thread pool; without it the same API degrades to a sequential loop.
//! Results come back in input order either way, so output is identical
//! regardless of worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
pub fn map_points<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(|item| f(item)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(|item| f(item)).collect()
    }
}

/// Sequential reference path, available regardless of features.
pub fn map_points_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(|item| f(item)).collect()
}

/// Runs `f` inside a thread pool of the requested size; `workers = 0` keeps
/// the library default. Without the `parallel` feature the closure simply
/// runs on the calling thread.
#[cfg(feature = "parallel")]
pub fn with_worker_count<T, F>(workers: usize, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("building a local thread pool cannot fail for a sane size")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_worker_count<T, F>(_workers: usize, f: F) -> T
where
    F: FnOnce() -> T,
{
    f()
}
