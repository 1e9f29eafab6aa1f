//! Charts, Weyl structures, maps, distributions, frames and sampling.

mod distribution;
mod frame;
mod map;
mod sampling;
mod weyl;

use std::sync::Arc;

pub use distribution::{DistributionJet, DistributionSpec};
pub use frame::{adapted_frame, complex_inner, null_pair, orthonormal_frame, PointFrame, Split};
pub use map::{MapJets, MapSpec};
pub use sampling::{halton, sample_points, SampleSet};
pub use weyl::{LeeJet, MetricJet, WeylJet, WeylStructure};

use crate::error::{Error, Result};

/// A single coordinate chart with a sampling box and an orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    coords: Arc<[String]>,
    sample_box: Vec<(f64, f64)>,
    orientation: i8,
}

impl Chart {
    /// A chart of dimension 2 to 6.
    pub fn new(coords: Vec<String>, sample_box: Vec<(f64, f64)>, orientation: i8) -> Result<Self> {
        if !(2..=6).contains(&coords.len()) {
            return Err(Error::InvalidChart(format!("dimension {} outside 2..=6", coords.len())));
        }
        Self::target(coords, sample_box, orientation)
    }

    /// A codomain chart; unlike [`Chart::new`] this also admits dimension 1.
    pub fn target(coords: Vec<String>, sample_box: Vec<(f64, f64)>, orientation: i8) -> Result<Self> {
        let m = coords.len();
        if !(1..=6).contains(&m) {
            return Err(Error::InvalidChart(format!("dimension {m} outside 1..=6")));
        }
        if sample_box.len() != m {
            return Err(Error::InvalidChart(format!("{} box intervals for {m} coordinates", sample_box.len())));
        }
        if let Some((lo, hi)) = sample_box.iter().find(|(lo, hi)| lo.partial_cmp(hi) != Some(std::cmp::Ordering::Less) || !lo.is_finite() || !hi.is_finite()) {
            return Err(Error::InvalidChart(format!("degenerate interval [{lo}, {hi}]")));
        }
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidChart(format!("orientation must be +1 or -1, got {orientation}")));
        }
        for (i, c) in coords.iter().enumerate() {
            let ok = c.chars().next().is_some_and(|ch| ch.is_ascii_alphabetic())
                && c.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_');
            if !ok || crate::expr::Func::from_name(c).is_some() || c == "pi" || c == "e" {
                return Err(Error::InvalidChart(format!("invalid coordinate name '{c}'")));
            }
            if coords[..i].contains(c) {
                return Err(Error::InvalidChart(format!("duplicate coordinate '{c}'")));
            }
        }
        Ok(Chart { coords: coords.into(), sample_box, orientation })
    }

    /// Coordinates `x1..xm` on the box `[lo, hi]^m`.
    pub fn standard(m: usize, lo: f64, hi: f64) -> Result<Self> {
        Chart::new((1..=m).map(|i| format!("x{i}")).collect(), vec![(lo, hi); m], 1)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &Arc<[String]> {
        &self.coords
    }

    pub fn sample_box(&self) -> &[(f64, f64)] {
        &self.sample_box
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn with_orientation(&self, orientation: i8) -> Self {
        Chart { orientation, ..self.clone() }
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        y.iter().zip(&self.sample_box).all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// Parses an expression over this chart's coordinates.
    pub fn parse(&self, text: &str) -> Result<crate::expr::Expression> {
        Ok(crate::expr::parse_shared(text, self.coords.clone())?)
    }
}
