//! Data-parallel reduction helpers.
//!
//! With the `parallel` feature (default) the hot loops fan out over rayon;
//! without it they fall back to plain iterators. Both paths are always
//! compiled so benchmarks can compare them directly. All reductions here
//! are order-independent (max with deterministic tie-breaking on the
//! smaller index, or index-preserving map), so results are bit-stable
//! across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maximum of `f` over `items` together with the argmax index.
/// Ties break to the smaller index. Returns `(0.0, None)` on empty input.
pub fn max_indexed_serial<T, F>(items: &[T], f: F) -> (f64, Option<usize>)
where
    F: Fn(usize, &T) -> f64,
{
    let mut best = f64::NEG_INFINITY;
    let mut arg = None;
    for (i, item) in items.iter().enumerate() {
        let v = f(i, item);
        if v > best {
            best = v;
            arg = Some(i);
        }
    }
    if arg.is_none() {
        (0.0, None)
    } else {
        (best, arg)
    }
}

#[cfg(feature = "parallel")]
pub fn max_indexed_parallel<T, F>(items: &[T], f: F) -> (f64, Option<usize>)
where
    T: Sync,
    F: Fn(usize, &T) -> f64 + Sync,
{
    let folded = items
        .par_iter()
        .enumerate()
        .map(|(i, item)| (f(i, item), Some(i)))
        .reduce(
            || (f64::NEG_INFINITY, None),
            |a, b| match (a.1, b.1) {
                (None, _) => b,
                (_, None) => a,
                (Some(ia), Some(ib)) => {
                    if b.0 > a.0 || (b.0 == a.0 && ib < ia) {
                        b
                    } else {
                        a
                    }
                }
            },
        );
    if folded.1.is_none() {
        (0.0, None)
    } else {
        folded
    }
}

/// Feature-dispatched maximum with argmax.
pub fn max_indexed<T, F>(items: &[T], f: F) -> (f64, Option<usize>)
where
    T: Sync,
    F: Fn(usize, &T) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        max_indexed_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        max_indexed_serial(items, f)
    }
}

/// Order-preserving map over an index range.
pub fn map_range_serial<U, F>(len: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..len).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range_parallel<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

/// Feature-dispatched order-preserving map, used to process corpus
/// instances independently.
pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_range_parallel(len, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_range_serial(len, f)
    }
}
