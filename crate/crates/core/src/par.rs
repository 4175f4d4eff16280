//! Deterministic data-parallel helpers.
//!
//! Work is mapped in index order and reduced by pairwise summation in index
//! order, so the sequential and parallel paths produce bit-identical results.

use std::sync::atomic::{AtomicU8, Ordering};

use crate::matcalc::SquareMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

/// Selects the execution strategy process-wide. `Parallel` silently degrades to
/// sequential when the crate is built without the `parallel` feature.
pub fn set_execution(mode: Execution) {
    MODE.store(matches!(mode, Execution::Parallel) as u8, Ordering::Relaxed);
}

pub fn execution() -> Execution {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == 1 {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

/// `(0..n).map(f)` collected in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if execution() == Execution::Parallel && n > 1 {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// Maps over a slice in index order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_indexed(items.len(), |i| f(&items[i]))
}

/// Pairwise (cascade) summation of matrices in index order.
pub fn pairwise_sum(items: &[SquareMatrix], order: usize) -> SquareMatrix {
    match items.len() {
        0 => SquareMatrix::zeros(order),
        1 => items[0].clone(),
        n => {
            let (a, b) = items.split_at(n / 2);
            let mut s = pairwise_sum(a, order);
            s += &pairwise_sum(b, order);
            s
        }
    }
}

pub fn pairwise_sum_f64(items: &[f64]) -> f64 {
    match items.len() {
        0 => 0.0,
        1 => items[0],
        n => {
            let (a, b) = items.split_at(n / 2);
            pairwise_sum_f64(a) + pairwise_sum_f64(b)
        }
    }
}
