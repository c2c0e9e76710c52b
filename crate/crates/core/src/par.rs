//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) these dispatch to rayon;
//! without it they are plain iterator loops. Every helper returns results in
//! input order, so callers never observe the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Keeps the indices in `0..n` satisfying `pred`, in ascending order.
pub fn filter_range<F>(n: usize, pred: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter(|&i| pred(i)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).filter(|&i| pred(i)).collect()
    }
}

/// Fills consecutive `chunk`-sized rows of `out` with `f(row_index, row)`.
pub fn fill_rows<T, F>(out: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        out.par_chunks_mut(chunk).enumerate().for_each(|(i, row)| f(i, row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        out.chunks_mut(chunk).enumerate().for_each(|(i, row)| f(i, row));
    }
}

/// True when `pred` holds for every index in `0..n`.
pub fn all_range<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().all(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).all(pred)
    }
}

/// Whether this build dispatches to rayon.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers_preserve_order() {
        let v: Vec<u32> = (0..1000).collect();
        assert_eq!(map(&v, |x| x * 2), v.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(map_range(5, |i| i * i), vec![0, 1, 4, 9, 16]);
        assert_eq!(filter_range(10, |i| i % 3 == 0), vec![0, 3, 6, 9]);
        let mut rows = vec![0usize; 12];
        fill_rows(&mut rows, 4, |i, r| r.iter_mut().for_each(|x| *x = i));
        assert_eq!(rows, vec![0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2]);
        assert!(all_range(100, |i| i < 100));
    }
}
