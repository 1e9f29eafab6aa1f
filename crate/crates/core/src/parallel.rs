//! Point-level parallel evaluation with deterministic ordering.

use crate::error::Result;
use rayon::prelude::*;

/// Evaluate `f` at every point, in parallel on the current rayon pool.
///
/// Results keep the input order; the first error by point index wins.
pub fn per_point<T, F>(points: &[Vec<f64>], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[f64]) -> Result<T> + Sync,
{
    let results: Vec<Result<T>> = points.par_iter().map(|x| f(x)).collect();
    results.into_iter().collect()
}

/// Run `f` on a dedicated pool with `jobs` threads (`None` or 0: rayon default).
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}
