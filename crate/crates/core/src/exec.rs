//! Execution-mode plumbing: data-parallel inner loops run on rayon when the
//! `parallel` feature is enabled, with a sequential fallback that produces
//! identical results.

/// How a data-parallel loop should run. All contracts in this crate are
/// deterministic: aggregate results are identical regardless of mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        ExecMode::Parallel
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        ExecMode::Sequential
    }
}

/// Map `f` over `items`, preserving input order in the output.
pub fn map_collect<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
    }
}

/// Fold `items` into an accumulator with an associative, commutative merge.
pub fn fold_commutative<T, A, F, M>(mode: ExecMode, items: Vec<T>, init: A, f: F, merge: M) -> A
where
    T: Send,
    A: Send + Sync + Clone,
    F: Fn(A, T) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().fold(init, f),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items
                .into_par_iter()
                .fold(|| init.clone(), &f)
                .reduce(|| init.clone(), &merge)
        }
    }
}
