//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) batch work is spread over the
//! rayon pool; without it, or inside [`sequential`], the same closures run
//! in order on the calling thread. Results are always collected in input
//! order and reduced left to right, so both paths give bit-identical output.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Run `body` with parallel dispatch disabled on this thread.
///
/// Nested calls made from `body` stay on the current thread, so the flag
/// covers the whole computation. Used by the benches to compare both paths
/// from a single build.
pub fn sequential<R>(body: impl FnOnce() -> R) -> R {
    let previous = FORCE_SEQUENTIAL.with(|flag| flag.replace(true));
    let out = body();
    FORCE_SEQUENTIAL.with(|flag| flag.set(previous));
    out
}

/// Whether calls on this thread will be dispatched to the rayon pool.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(Cell::get)
}

/// Map `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Map `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && n > 1 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Configure the global pool size. Only the first call has any effect.
#[cfg(feature = "parallel")]
pub fn init_threads(threads: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn init_threads(_threads: usize) {}
