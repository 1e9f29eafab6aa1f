//! Task registry and batch runs over a parsed geometry.

use crate::config::{ConfigFile, Geometry};
use crate::connection::equal_trace_check;
use crate::curvature::{asd_check, einstein_weyl_check, gauduchon_tod_check, gt_connection_curvature};
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::geometry::{sample_points, DistributionSpec, MapSpec, SampleSet, WeylStructure};
use crate::hermitian::{
    hermitian_weyl_check, holomorphy_check, lemma34_check, nijenhuis_check, prop311_report, AlmostComplexField,
};
use crate::morphism::{
    chain_rule_check, fuglede_ishihara, fundamental_equation_residual, harmonic_check, harmonic_morphism_verdict,
    hwc_check, required_codomain_lee, theorem23_report, trace_b_residual, MapPoint,
};
use crate::parallel::{per_point, with_jobs};
use crate::report::{Series, Tolerance, Verdict, VerdictReport};
use crate::shape::ShapeAt;
use crate::twistor::{
    eq41_residual, extract_k, lemma55_check, prop56_report, ricci_horizontal_tracefree, thm44a_report,
    twistorial_3to2, twistorial_4to2, twistorial_4to3, EQ41_COEFFICIENT,
};
use serde::Serialize;
use thiserror::Error;

pub const SCHEMA: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Number of random cubic test functions used by `eq13`.
pub const EQ13_FUNCTIONS: usize = 10;

/// Registered tasks with a one-line description.
pub const TASKS: &[(&str, &str)] = &[
    ("eq13", "equal-trace Weyl connection and Dg = -2a(x)g"),
    ("einstein-weyl", "trace-free symmetric Ricci of D vanishes"),
    ("asd", "self-dual Weyl tensor vanishes (m = 4)"),
    ("gauduchon-tod", "s = (3/2)k^2 and *Dk = F (m = 3, needs k)"),
    ("gt-flat", "flatness of the Gauduchon-Tod connection (m = 3, needs k)"),
    ("hermitian-weyl", "Weyl connection with trace DJ = 0"),
    ("nijenhuis", "integrability of the declared J"),
    ("hwc", "horizontal weak conformality"),
    ("harmonic", "vanishing tension field"),
    ("morphism", "harmonic morphism: harmonic and HWC"),
    ("chain", "chain rule for the Laplacian of f(phi)"),
    ("trace-b", "vertical mean curvature identity"),
    ("fundamental", "fundamental equation of a HWC map"),
    ("theorem23", "two of: harmonic morphism, minimal fibres, pullback connection"),
    ("codomain-lee", "codomain Lee form forced by the harmonic morphism condition"),
    ("fuglede", "pullbacks of harmonic polynomials are harmonic"),
    ("holomorphic", "dphi J^M = J^N dphi"),
    ("lemma34", "Laplacian identity for holomorphic maps"),
    ("prop311", "harmonic morphism versus J parallel along fibres (4 -> 2)"),
    ("twistorial", "twistoriality (3 -> 2, 4 -> 2 or 4 -> 3)"),
    ("thm44a", "two of: harmonic morphism, twistorial, Lee form condition (4 -> 3)"),
    ("eq41", "Lee form condition with the 1/2 coefficient (4 -> 3)"),
    ("extract-k", "weight -1 function k and its basic-ness (4 -> 3)"),
    ("ricci-horizontal", "trace-free horizontal Ricci of a harmonic morphism"),
    ("prop56", "harmonic morphism versus twistoriality on Einstein domains"),
    ("lemma55", "null identity for harmonic morphisms (4 -> 3)"),
];

/// Identities reported by the `identity` command and the task behind each.
pub const IDENTITIES: &[(&str, &str)] = &[
    ("chain", "chain"),
    ("trace-b", "trace-b"),
    ("fundamental", "fundamental"),
    ("lemma34", "lemma34"),
    ("lemma55", "lemma55"),
    ("eq13", "eq13"),
    ("eq41", "eq41"),
    ("eq42", "extract-k"),
];

pub fn task_names() -> Vec<&'static str> {
    TASKS.iter().map(|t| t.0).collect()
}

pub fn is_task(name: &str) -> bool {
    TASKS.iter().any(|t| t.0 == name)
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("unknown task `{name}`; registered tasks: {}", task_names().join(", "))]
    UnknownTask { name: String },
    #[error("unknown identity `{0}`; known: chain, trace-b, fundamental, lemma34, lemma55, eq13, eq41, eq42")]
    UnknownIdentity(String),
    #[error("no tasks requested")]
    NoTasks,
    #[error("task {task}: {source}")]
    Geometry { task: String, source: Error },
    #[error(transparent)]
    Sampling(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::UnknownTask { .. } | RunError::UnknownIdentity(_) | RunError::NoTasks => 2,
            RunError::Geometry { .. } | RunError::Sampling(_) => 3,
        }
    }
}

/// Command-line overrides of the `[run]` section.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub tasks: Vec<String>,
    pub points: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub orientation: Option<i8>,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EffectiveOptions {
    pub points: usize,
    pub seed: u64,
    pub tol: f64,
    pub orientation: i8,
}

/// Machine-readable result of a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunDocument {
    pub schema: u32,
    pub engine: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    pub config: ConfigFile,
    pub options: EffectiveOptions,
    pub passed: bool,
    pub reports: Vec<VerdictReport>,
}

impl RunDocument {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table, one row per task.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:<18} {:>6} {:>6} {:>12} {:>12}  {}\n", "task", "points", "skip", "residual", "scale", "verdict");
        for r in &self.reports {
            out.push_str(&format!(
                "{:<18} {:>6} {:>6} {:>12.3e} {:>12.3e}  {}\n",
                r.task, r.points_accepted, r.points_rejected, r.max_residual, r.scale, r.verdict
            ));
            for m in &r.measures {
                out.push_str(&format!("  {:<16} {:>27.3e} {:>12.3e}  {}\n", m.name, m.max_residual, m.scale, m.verdict));
            }
            for f in &r.flags {
                out.push_str(&format!("  {:<16} {:>54}\n", f.name, if f.pass { "holds" } else { "VIOLATED" }));
            }
        }
        out
    }
}

fn need_map(g: &Geometry) -> Result<&MapSpec> {
    g.map.as_ref().ok_or(Error::Missing("[map] section"))
}

fn need_j(g: &Geometry) -> Result<&AlmostComplexField> {
    g.complex_structure.as_ref().ok_or(Error::Missing("[complex_structure] section"))
}

fn need_jn(g: &Geometry) -> Result<&AlmostComplexField> {
    g.codomain_complex_structure.as_ref().ok_or(Error::Missing("codomain complex_structure"))
}

fn need_k(g: &Geometry) -> Result<&Expression> {
    g.gt_k.as_ref().ok_or(Error::Missing("[gauduchon_tod] k"))
}

fn shape_at(g: &Geometry, x: &[f64]) -> Result<ShapeAt> {
    match (&g.map, &g.distribution) {
        (Some(m), _) => ShapeAt::from_map(m, x),
        (None, Some(d)) => ShapeAt::from_fields(&g.domain, d, x),
        (None, None) => Err(Error::Missing("[map] or [distribution] section")),
    }
}

fn series(rows: Vec<(f64, f64)>) -> Series {
    let mut s = Series::default();
    for (r, c) in rows {
        s.push(r, c);
    }
    s
}

fn trace_b_report(g: &Geometry, pts: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let rows = per_point(pts, |x| Ok(trace_b_residual(&shape_at(g, x)?)))?;
    Ok(VerdictReport::from_series("trace-b", pts.len(), 0, &series(rows), tol))
}

fn fundamental_report(map: &MapSpec, pts: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let rows = per_point(pts, |x| fundamental_equation_residual(&MapPoint::new(map, x)?, tol))?;
    Ok(VerdictReport::from_series("fundamental", pts.len(), 0, &series(rows), tol))
}

fn eq41_report(map: &MapSpec, pts: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let rows = per_point(pts, |x| eq41_residual(&ShapeAt::from_map(map, x)?, EQ41_COEFFICIENT))?;
    Ok(VerdictReport::from_series("eq41", pts.len(), 0, &series(rows), tol))
}

fn twistorial(map: &MapSpec, pts: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    match (map.m(), map.n()) {
        (3, 2) => twistorial_3to2(map, pts, tol),
        (4, 2) => twistorial_4to2(map, pts, tol),
        (4, 3) => twistorial_4to3(map, pts, tol),
        (m, n) => Err(Error::Dimension { op: "twistorial", detail: format!("no twistor structure for {m} -> {n}") }),
    }
}

/// Run one registered task on already accepted points.
pub fn run_task(name: &str, g: &Geometry, pts: &[Vec<f64>], seed: u64, tol: Tolerance) -> Result<VerdictReport> {
    let w: &WeylStructure = &g.domain;
    let report = match name {
        "eq13" => equal_trace_check(w, pts, seed, EQ13_FUNCTIONS, tol)?,
        "einstein-weyl" => einstein_weyl_check(w, pts, tol)?,
        "asd" => asd_check(w, pts, tol)?,
        "gauduchon-tod" => gauduchon_tod_check(w, need_k(g)?, pts, tol)?,
        "gt-flat" => gt_connection_curvature(w, need_k(g)?, pts, tol)?,
        "hermitian-weyl" => hermitian_weyl_check(w, need_j(g)?, pts, tol)?,
        "nijenhuis" => nijenhuis_check(need_j(g)?, pts, tol)?,
        "hwc" => hwc_check(need_map(g)?, pts, tol)?,
        "harmonic" => harmonic_check(need_map(g)?, pts, tol)?,
        "morphism" => harmonic_morphism_verdict(need_map(g)?, pts, tol)?,
        "chain" => chain_rule_check(need_map(g)?, pts, tol)?,
        "trace-b" => trace_b_report(g, pts, tol)?,
        "fundamental" => fundamental_report(need_map(g)?, pts, tol)?,
        "theorem23" => theorem23_report(need_map(g)?, pts, tol)?,
        "codomain-lee" => required_codomain_lee(need_map(g)?, pts, tol)?,
        "fuglede" => fuglede_ishihara(need_map(g)?, pts, tol)?,
        "holomorphic" => holomorphy_check(need_map(g)?, need_j(g)?, need_jn(g)?, pts, tol)?,
        "lemma34" => lemma34_check(need_map(g)?, need_j(g)?, need_jn(g)?, pts, tol)?,
        "prop311" => prop311_report(need_map(g)?, need_j(g)?, pts, tol)?,
        "twistorial" => twistorial(need_map(g)?, pts, tol)?,
        "thm44a" => thm44a_report(need_map(g)?, pts, tol)?,
        "eq41" => eq41_report(need_map(g)?, pts, tol)?,
        "extract-k" => extract_k(need_map(g)?, pts, tol)?,
        "ricci-horizontal" => ricci_horizontal_tracefree(need_map(g)?, pts, tol)?,
        "prop56" => prop56_report(need_map(g)?, pts, tol)?,
        "lemma55" => lemma55_check(need_map(g)?, pts, tol)?,
        other => return Err(Error::InvalidDeclaration(format!("unknown task `{other}`"))),
    };
    Ok(report)
}

/// Halton sample of the domain box, keeping points where every object the
/// geometry declares can be evaluated.
pub fn sample(g: &Geometry, count: usize, seed: u64) -> Result<SampleSet> {
    let w = &g.domain;
    let dist: Option<&DistributionSpec> = g.distribution.as_ref();
    sample_points(w.chart(), count, seed, |x| {
        match (&g.map, dist) {
            (Some(m), _) => MapPoint::new(m, x).map(|_| ()),
            (None, Some(d)) => ShapeAt::from_fields(w, d, x).map(|_| ()),
            (None, None) => w.jet_at(x).map(|_| ()),
        }?;
        if let Some(j) = &g.complex_structure {
            j.at(x)?;
        }
        Ok(())
    })
}

fn resolve(g: &Geometry, opts: &RunOptions) -> std::result::Result<(Geometry, Vec<String>, EffectiveOptions), RunError> {
    let tasks = if opts.tasks.is_empty() { g.run.tasks.clone() } else { opts.tasks.clone() };
    if tasks.is_empty() {
        return Err(RunError::NoTasks);
    }
    if let Some(bad) = tasks.iter().find(|t| !is_task(t)) {
        return Err(RunError::UnknownTask { name: bad.clone() });
    }
    let geometry = match opts.orientation {
        Some(o) => g.with_orientation(o),
        None => g.clone(),
    };
    let eff = EffectiveOptions {
        points: opts.points.unwrap_or_else(|| g.points()),
        seed: opts.seed.unwrap_or_else(|| g.seed()),
        tol: opts.tol.unwrap_or_else(|| g.tol()),
        orientation: geometry.domain.chart().orientation(),
    };
    Ok((geometry, tasks, eff))
}

/// Sample once and run every requested task.
pub fn run(g: &Geometry, opts: &RunOptions) -> std::result::Result<RunDocument, RunError> {
    let (geometry, tasks, eff) = resolve(g, opts)?;
    with_jobs(opts.jobs, || {
        let set = sample(&geometry, eff.points, eff.seed).map_err(RunError::Sampling)?;
        let tol = Tolerance::new(eff.tol);
        let mut reports = Vec::with_capacity(tasks.len());
        for t in &tasks {
            let mut r = run_task(t, &geometry, &set.accepted, eff.seed, tol)
                .map_err(|e| RunError::Geometry { task: t.clone(), source: e })?;
            r.points_accepted = set.accepted.len();
            r.points_rejected = set.rejected.len();
            reports.push(r);
        }
        let passed = reports.iter().all(|r| r.verdict != Verdict::Fail);
        Ok(RunDocument {
            schema: SCHEMA,
            engine: "weylcheck",
            version: ENGINE_VERSION,
            geometry: geometry.name.clone(),
            config: geometry.source.clone(),
            options: eff,
            passed,
            reports,
        })
    })
}

/// Raw residual of one identity; the verdict is report-only.
pub fn identity(name: &str, g: &Geometry, opts: &RunOptions) -> std::result::Result<RunDocument, RunError> {
    let task = IDENTITIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| RunError::UnknownIdentity(name.to_string()))?;
    let mut o = opts.clone();
    o.tasks = vec![task];
    let mut doc = run(g, &o)?;
    for r in &mut doc.reports {
        r.task = name.to_string();
        r.verdict = Verdict::ReportOnly;
    }
    doc.passed = true;
    Ok(doc)
}
