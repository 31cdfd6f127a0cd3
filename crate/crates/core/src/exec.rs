//! Sequential or data-parallel execution of the enumeration loops.
//!
//! With the `parallel` feature the loops run on the rayon global pool; without
//! it every [`Strategy`] degrades to a plain sequential loop. Results never
//! depend on the strategy: parallel work is split into fixed chunks and merged
//! in chunk order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the brute-force loops are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Whether this strategy will actually fan out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }

    /// `items.iter().map(f).collect()`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Applies `f` to consecutive ranges covering `0..len` and returns the
    /// per-range results in range order.
    pub fn map_ranges<R, F>(self, len: u64, chunk: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(std::ops::Range<u64>) -> R + Sync + Send,
    {
        let chunk = chunk.max(1);
        let count = len.div_ceil(chunk);
        let range_of = |c: u64| c * chunk..((c + 1) * chunk).min(len);
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..count).into_par_iter().map(|c| f(range_of(c))).collect();
        }
        (0..count).map(|c| f(range_of(c))).collect()
    }
}
