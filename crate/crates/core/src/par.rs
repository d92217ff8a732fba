//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it, or when [`Exec::Sequential`] is requested, they are plain loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the embarrassingly parallel scans.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `items.map(f)` preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.into_par_iter().map(f).collect();
        }
        items.into_iter().map(f).collect()
    }

    /// `(0..n).map(f)` preserving order.
    pub fn map_range<R, F>(self, n: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// `(0..n).filter(pred)` preserving order.
    pub fn filter_range<F>(self, n: u64, pred: F) -> Vec<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter(|&i| pred(i)).collect();
        }
        (0..n).filter(|&i| pred(i)).collect()
    }
}

/// Configures the global worker pool; `0` keeps rayon's default.
pub fn set_jobs(jobs: usize) {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        // a second call is harmless; the first pool wins
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree() {
        let f = |i: u64| i * i % 7;
        assert_eq!(
            Exec::Parallel.map_range(100, f),
            Exec::Sequential.map_range(100, f)
        );
        assert_eq!(
            Exec::Parallel.filter_range(50, |i| i % 3 == 0),
            Exec::Sequential.filter_range(50, |i| i % 3 == 0)
        );
    }
}
