//! The crate's single data-parallel seam.
//!
//! Everything that fans out over independent work items (sample points,
//! pool graphs, identity kinds) funnels through [`map_slice`], so the
//! `parallel` feature toggles exactly one code path. Both versions
//! preserve input order, and the bounds are identical so switching the
//! feature can never change what compiles.

#[cfg(feature = "parallel")]
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}
