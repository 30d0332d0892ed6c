//! Data-parallel helpers with a sequential fallback.
//!
//! Batch suites (randomized property checks, many-function evaluation) call
//! [`map_collect`]. With the `parallel` feature enabled and
//! [`Parallelism::Parallel`] selected, items are processed on the rayon pool;
//! otherwise they run in order on the calling thread. Results are always
//! returned in input order so output is deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

pub fn map_collect<T, U, F>(mode: Parallelism, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Runs `f(0..n)` and collects results in index order.
pub fn map_range<U, F>(mode: Parallelism, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map_collect(Parallelism::Sequential, &xs, |x| x * x);
        let b = map_collect(Parallelism::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(map_range(Parallelism::Parallel, 5, |i| i), vec![0, 1, 2, 3, 4]);
    }
}
