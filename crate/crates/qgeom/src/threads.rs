//! Optional thread-count override via the QGEOM_THREADS environment
//! variable. When unset (or unparsable) rayon's default global pool is
//! used.

use once_cell::sync::Lazy;
use rayon::ThreadPool;

static POOL: Lazy<Option<ThreadPool>> = Lazy::new(|| {
    let n: usize = std::env::var("QGEOM_THREADS").ok()?.parse().ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
});

/// Run `f` inside the configured pool, or directly on the global pool.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match &*POOL {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// The thread count actually in effect, for run metadata.
pub fn effective_threads() -> usize {
    match &*POOL {
        Some(pool) => pool.current_num_threads(),
        None => rayon::current_num_threads(),
    }
}
