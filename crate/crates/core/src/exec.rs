//! Data-parallel map over independent work items.
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] runs on
//! the rayon global pool. Without it every strategy runs sequentially. The
//! output order always matches the input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// Whether this strategy actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

pub fn map_range<R, F>(strategy: Strategy, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

pub fn map_slice<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_range(strategy, items.len(), |i| f(&items[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let seq = map_range(Strategy::Sequential, 1000, |i| i * i);
        let par = map_range(Strategy::Parallel, 1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(map_slice(Strategy::Parallel, &[3, 1, 2], |x| x + 1), vec![4, 2, 3]);
    }
}
