//! Order-preserving data-parallel map used by the search oracles.
//!
//! With the `parallel` feature (on by default) work is spread over a rayon
//! pool sized to the requested worker count. Without it, or with a single
//! worker, the same closure runs sequentially on the calling thread.

/// Whether this build can run on more than one thread.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// Number of worker threads a default pool would use.
pub fn available_workers() -> usize {
    #[cfg(feature = "parallel")]
    return rayon::current_num_threads();

    #[cfg(not(feature = "parallel"))]
    return 1;
}

/// Applies `f` to every item, returning the results in input order.
pub fn map_collect<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 && items.len() > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build rayon thread pool");
        return pool.install(|| items.par_iter().map(&f).collect());
    }

    let _ = workers;
    items.iter().map(f).collect()
}
