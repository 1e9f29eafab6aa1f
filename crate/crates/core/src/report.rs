//! Verdicts, tolerances and per-task reports.

use serde::Serialize;
use std::collections::BTreeMap;

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ReportOnly => "report-only",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relative tolerance policy: a residual series passes when
/// `max residual < tol·(1 + max scale)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: DEFAULT_TOL }
    }
}

impl Tolerance {
    pub fn new(rel: f64) -> Self {
        Tolerance { rel }
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual.is_finite() && residual < self.rel * (1.0 + scale.abs())
    }
}

/// Residuals of one quantity over the sample points.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Series {
    pub residuals: Vec<f64>,
    pub scales: Vec<f64>,
}

impl Series {
    pub fn push(&mut self, residual: f64, scale: f64) {
        self.residuals.push(residual);
        self.scales.push(scale);
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0_f64, |a, &b| if b.is_nan() { f64::NAN } else { a.max(b) })
    }

    pub fn max_scale(&self) -> f64 {
        self.scales.iter().fold(0.0_f64, |a, &b| a.max(b.abs()))
    }

    pub fn verdict(&self, tol: Tolerance) -> Verdict {
        Verdict::from_bool(tol.accepts(self.max_residual(), self.max_scale()))
    }

    /// Whether the residual at point `i` is below tolerance on its own scale.
    pub fn passes_at(&self, i: usize, tol: Tolerance) -> bool {
        tol.accepts(self.residuals[i], self.scales[i])
    }

    pub fn measure(&self, name: &str, tol: Tolerance) -> Measure {
        Measure {
            name: name.to_string(),
            max_residual: self.max_residual(),
            scale: self.max_scale(),
            verdict: self.verdict(tol),
        }
    }
}

/// One named residual with its verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Measure {
    pub name: String,
    pub max_residual: f64,
    pub scale: f64,
    pub verdict: Verdict,
}

/// A boolean consistency check, such as agreement between two verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Flag {
    pub name: String,
    pub pass: bool,
}

/// Per-point residual detail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointDetail {
    pub point: Vec<f64>,
    pub residual: f64,
    pub scale: f64,
}

/// Result of one task over a point sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub task: String,
    pub points_accepted: usize,
    pub points_rejected: usize,
    pub max_residual: f64,
    pub scale: f64,
    pub verdict: Verdict,
    pub measures: Vec<Measure>,
    pub flags: Vec<Flag>,
    pub values: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Vec<PointDetail>>,
}

impl VerdictReport {
    pub fn new(task: &str, accepted: usize, rejected: usize) -> Self {
        VerdictReport {
            task: task.to_string(),
            points_accepted: accepted,
            points_rejected: rejected,
            max_residual: 0.0,
            scale: 0.0,
            verdict: Verdict::ReportOnly,
            measures: Vec::new(),
            flags: Vec::new(),
            values: BTreeMap::new(),
            details: None,
        }
    }

    /// Report whose verdict is that of a single residual series.
    pub fn from_series(task: &str, accepted: usize, rejected: usize, series: &Series, tol: Tolerance) -> Self {
        let mut r = Self::new(task, accepted, rejected);
        r.set_primary(series, tol);
        r
    }

    /// Use `series` for the headline residual and verdict.
    pub fn set_primary(&mut self, series: &Series, tol: Tolerance) {
        self.max_residual = series.max_residual();
        self.scale = series.max_scale();
        self.verdict = series.verdict(tol);
    }

    pub fn with_measure(mut self, name: &str, series: &Series, tol: Tolerance) -> Self {
        self.measures.push(series.measure(name, tol));
        self
    }

    pub fn with_flag(mut self, name: &str, pass: bool) -> Self {
        self.flags.push(Flag { name: name.to_string(), pass });
        self
    }

    pub fn with_value(mut self, name: &str, v: f64) -> Self {
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn with_details(mut self, points: &[Vec<f64>], series: &Series) -> Self {
        self.details = Some(
            points
                .iter()
                .zip(series.residuals.iter().zip(&series.scales))
                .map(|(p, (&r, &s))| PointDetail { point: p.clone(), residual: r, scale: s })
                .collect(),
        );
        self
    }

    pub fn measure(&self, name: &str) -> Option<&Measure> {
        self.measures.iter().find(|m| m.name == name)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|f| f.name == name).map(|f| f.pass)
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}
