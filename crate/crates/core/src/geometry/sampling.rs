use crate::error::{Error, Result};
use crate::geometry::Chart;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Radical inverse of `index` in each of the first `dim` prime bases.
pub fn halton(index: u64, dim: usize) -> Vec<f64> {
    PRIMES[..dim]
        .iter()
        .map(|&b| {
            let (mut i, mut f, mut r) = (index, 1.0, 0.0);
            while i > 0 {
                f /= b as f64;
                r += f * (i % b) as f64;
                i /= b;
            }
            r
        })
        .collect()
}

/// Accepted sample points together with skipped ones and the reason.
#[derive(Clone, Debug, Default)]
pub struct SampleSet {
    pub accepted: Vec<Vec<f64>>,
    pub rejected: Vec<(Vec<f64>, String)>,
}

/// The first `count` Halton points (starting at index `seed + 1`) mapped into
/// the chart box; points failing `filter` are skipped and recorded.
pub fn sample_points(
    chart: &Chart,
    count: usize,
    seed: u64,
    filter: impl Fn(&[f64]) -> Result<()>,
) -> Result<SampleSet> {
    if count == 0 {
        return Err(Error::SamplingFailure { accepted: 0, requested: 0 });
    }
    let m = chart.dim();
    let mut set = SampleSet::default();
    for i in 0..count as u64 {
        let u = halton(seed + 1 + i, m);
        let x: Vec<f64> = u
            .iter()
            .zip(chart.sample_box())
            .map(|(t, (lo, hi))| lo + t * (hi - lo))
            .collect();
        match filter(&x) {
            Ok(()) => set.accepted.push(x),
            Err(e) => set.rejected.push((x, e.to_string())),
        }
    }
    if set.accepted.len() * 2 < count {
        return Err(Error::SamplingFailure { accepted: set.accepted.len(), requested: count });
    }
    Ok(set)
}
