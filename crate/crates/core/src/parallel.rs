use rayon::ThreadPoolBuilder;

/// Runs `f` on a dedicated pool of `jobs` worker threads (`0` picks the
/// rayon default). Work inside `f` that uses rayon iterators stays on it.
pub(crate) fn with_jobs<R, F>(jobs: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
