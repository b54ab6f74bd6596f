//! Data-parallel folds over anchor nodes.
//!
//! Census and balance accumulate integer counters per anchor node and merge
//! them by addition, so the merge order never changes a result. With the
//! `parallel` feature off every fold runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
#[cfg(feature = "parallel")]
use crate::error::Error;
use crate::graph::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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

/// Folds `fold` over the anchors `0..n` and merges the partial accumulators.
pub(crate) fn fold_anchors<A, I, F, M>(n: usize, strategy: Strategy, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, NodeId) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let anchors = 0..n as NodeId;
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => anchors
            .into_par_iter()
            .fold(&init, &fold)
            .reduce(&init, &merge),
        _ => {
            let _ = &merge;
            anchors.fold(init(), fold)
        }
    }
}

/// Runs `op` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is `None`. Without the `parallel` feature `op` simply runs
/// on the calling thread.
pub fn with_threads<R, F>(threads: Option<usize>, op: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        match threads {
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Error::ThreadPool(e.to_string()))?;
                Ok(pool.install(op))
            }
            None => Ok(op()),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(op())
    }
}

pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let run = |s| fold_anchors(1000, s, || 0u64, |acc, v| acc + v as u64 * 3, |a, b| a + b);
        assert_eq!(run(Strategy::Sequential), run(Strategy::Parallel));
        assert_eq!(run(Strategy::Sequential), 3 * 999 * 1000 / 2);
    }

    #[test]
    fn pool_size_applies() {
        let n = with_threads(Some(2), current_threads).unwrap();
        if cfg!(feature = "parallel") {
            assert_eq!(n, 2);
        } else {
            assert_eq!(n, 1);
        }
    }
}
