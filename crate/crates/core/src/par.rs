//! Order-preserving data-parallel helpers.
//!
//! Every helper returns results in input order, so callers observe the same output whether the
//! `parallel` feature is enabled or not, and regardless of the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to `0..len` and collects the results in index order.
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Applies `f` to each element of `items`, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Keeps the elements of `items` for which `keep` holds, preserving order.
pub fn filter_vec<T, F>(items: Vec<T>, keep: F) -> Vec<T>
where
    T: Send,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().filter(|t| keep(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().filter(|t| keep(t)).collect()
    }
}

/// Number of workers the helpers above will use.
pub fn worker_count() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Caps the global worker pool. Has no effect without the `parallel` feature or when the pool
/// was already initialised.
pub fn set_thread_cap(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// Runs `f` with at most `threads` workers. Used by the benchmarks to compare a single worker
/// with the full pool inside one process.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_range_keeps_order() {
        let v = map_range(1000, |i| i * 3);
        assert!(v.iter().enumerate().all(|(i, &x)| x == 3 * i));
    }

    #[test]
    fn filter_keeps_order() {
        let v = filter_vec((0..500).collect::<Vec<_>>(), |x| x % 7 == 0);
        assert_eq!(v, (0..500).filter(|x| x % 7 == 0).collect::<Vec<_>>());
    }

    #[test]
    fn single_worker_gives_same_result() {
        let a = map_range(257, |i| (i as u64).pow(2));
        let b = with_threads(1, || map_range(257, |i| (i as u64).pow(2)));
        assert_eq!(a, b);
    }
}
