//! Data-parallel loop helpers.
//!
//! With the `parallel` feature (on by default) the [`Strategy::Parallel`]
//! variant runs on the rayon global pool. Without it every strategy runs
//! sequentially, so results never depend on the feature set.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Strategy {
    /// `Parallel` when compiled with the `parallel` feature.
    pub const fn default_strategy() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }

    pub const fn is_parallel(self) -> bool {
        matches!(self, Strategy::Parallel) && cfg!(feature = "parallel")
    }
}

impl Default for Strategy {
    fn default() -> Self {
        Self::default_strategy()
    }
}

/// `(0..n).map(f).collect()`, order preserved.
pub fn map_range<T, F>(n: usize, strategy: Strategy, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

/// `items.iter().map(f).collect()`, order preserved.
pub fn map_slice<I, T, F>(items: &[I], strategy: Strategy, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// In-place `for_each` over a mutable slice.
pub fn for_each_mut<I, F>(items: &mut [I], strategy: Strategy, f: F)
where
    I: Send,
    F: Fn(&mut I) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        items.par_iter_mut().for_each(f);
        return;
    }
    let _ = strategy;
    items.iter_mut().for_each(f);
}
