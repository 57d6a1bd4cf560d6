//! Data-parallel batch helpers.
//!
//! With the `parallel` feature (on by default) [`map`] runs on the rayon
//! global pool; without it, it is the same as [`map_seq`]. Output order
//! always matches input order, so results are deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item, in parallel when the `parallel` feature is on.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

/// Sequential reference path, always available.
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Whether [`map`] dispatches to rayon in this build.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
