//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they fall back to plain iterators. Output order always
//! matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::exactlin::LinComb;

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

pub fn try_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    map(items, f).into_iter().collect()
}

/// `true` iff `pred` holds on every item.
#[cfg(feature = "parallel")]
pub fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().all(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.iter().all(pred)
}

pub fn try_all<T, F>(items: &[T], pred: F) -> Result<bool>
where
    T: Sync,
    F: Fn(&T) -> Result<bool> + Sync + Send,
{
    Ok(try_map(items, pred)?.into_iter().all(|b| b))
}

/// Sums per-item linear combinations. Exact arithmetic makes the result
/// independent of scheduling.
pub fn sum_lincomb<T, B, F>(items: &[T], f: F) -> LinComb<B>
where
    T: Sync,
    B: Ord + Clone + Send,
    F: Fn(&T) -> LinComb<B> + Sync + Send,
{
    map(items, f).into_iter().sum()
}

pub fn try_sum_lincomb<T, B, F>(items: &[T], f: F) -> Result<LinComb<B>>
where
    T: Sync,
    B: Ord + Clone + Send,
    F: Fn(&T) -> Result<LinComb<B>> + Sync + Send,
{
    Ok(try_map(items, f)?.into_iter().sum())
}
