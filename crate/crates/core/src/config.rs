//! TOML geometry files.
//!
//! ```toml
//! [chart]
//! coords = ["x", "y", "z"]
//! box = [[-1, 1], [-1, 1], [-1, 1]]
//! orientation = 1
//!
//! [metric]
//! components = ["1", "0", "0", "1", "0", "1"]   # row-major upper triangle
//!
//! [lee_form]
//! components = ["0", "0", "0"]
//!
//! [map]
//! components = ["x", "y"]
//! codomain = "weyl.codomain"
//!
//! [weyl.codomain]
//! coords = ["u", "v"]
//! box = [[-2, 2], [-2, 2]]
//! metric = ["1", "0", "1"]
//!
//! [run]
//! tasks = ["morphism"]
//! ```

use crate::error::Error;
use crate::expr::Expression;
use crate::geometry::{Chart, DistributionSpec, MapSpec, WeylStructure};
use crate::hermitian::AlmostComplexField;
use crate::report::DEFAULT_TOL;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

pub const DEFAULT_POINTS: usize = 64;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("invalid geometry declaration: {0}")]
    Geometry(#[from] Error),
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChartSection {
    pub coords: Vec<String>,
    #[serde(rename = "box")]
    pub sample_box: Vec<[f64; 2]>,
    #[serde(default = "positive")]
    pub orientation: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

fn positive() -> i8 {
    1
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Components {
    pub components: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    pub components: Vec<String>,
    #[serde(default = "codomain_ref")]
    pub codomain: String,
}

fn codomain_ref() -> String {
    "weyl.codomain".to_string()
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CodomainSection {
    pub coords: Vec<String>,
    #[serde(rename = "box")]
    pub sample_box: Vec<[f64; 2]>,
    #[serde(default = "positive")]
    pub orientation: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lee_form: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_structure: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DistributionSection {
    pub fields: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComplexSection {
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GtSection {
    pub k: String,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default)]
    pub tasks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

/// The raw contents of a geometry file.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub chart: ChartSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Components>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lee_form: Option<Components>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSection>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weyl: BTreeMap<String, CodomainSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<DistributionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_structure: Option<ComplexSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauduchon_tod: Option<GtSection>,
    #[serde(default)]
    pub run: RunSection,
}

/// A parsed, validated geometry with everything tasks may need.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub name: Option<String>,
    pub domain: WeylStructure,
    pub map: Option<MapSpec>,
    pub distribution: Option<DistributionSpec>,
    pub complex_structure: Option<AlmostComplexField>,
    pub codomain_complex_structure: Option<AlmostComplexField>,
    pub gt_k: Option<Expression>,
    pub run: RunSection,
    pub source: ConfigFile,
}

fn chart_from(coords: &[String], bx: &[[f64; 2]], orientation: i8, target: bool) -> Result<Chart, ConfigError> {
    let b: Vec<(f64, f64)> = bx.iter().map(|p| (p[0], p[1])).collect();
    let c = if target {
        Chart::target(coords.to_vec(), b, orientation)?
    } else {
        Chart::new(coords.to_vec(), b, orientation)?
    };
    Ok(c)
}

fn identity_upper(m: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i..m {
            out.push(if i == j { "1" } else { "0" }.to_string());
        }
    }
    out
}

fn structure(chart: Chart, metric: Option<&[String]>, lee: Option<&[String]>) -> Result<WeylStructure, ConfigError> {
    let m = chart.dim();
    let metric = metric.map(<[String]>::to_vec).unwrap_or_else(|| identity_upper(m));
    let lee = lee.map(<[String]>::to_vec).unwrap_or_else(|| vec!["0".to_string(); m]);
    let mr: Vec<&str> = metric.iter().map(String::as_str).collect();
    let lr: Vec<&str> = lee.iter().map(String::as_str).collect();
    Ok(WeylStructure::parse(chart, &mr, &lr)?)
}

fn complex(chart: &Chart, rows: &[Vec<String>]) -> Result<AlmostComplexField, ConfigError> {
    let r: Vec<Vec<&str>> = rows.iter().map(|row| row.iter().map(String::as_str).collect()).collect();
    if r.len() != chart.dim() {
        return Err(ConfigError::Invalid(format!("complex structure needs {} rows", chart.dim())));
    }
    Ok(AlmostComplexField::parse(chart, &r)?)
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn build(&self) -> Result<Geometry, ConfigError> {
        let c = &self.chart;
        if let Some(d) = c.dim {
            if d != c.coords.len() {
                return Err(ConfigError::Invalid(format!("chart.dim = {d} but {} coordinates given", c.coords.len())));
            }
        }
        let chart = chart_from(&c.coords, &c.sample_box, c.orientation, false)?;
        let domain = structure(
            chart.clone(),
            self.metric.as_ref().map(|s| s.components.as_slice()),
            self.lee_form.as_ref().map(|s| s.components.as_slice()),
        )?;
        let mut codomain_j = None;
        let map = match &self.map {
            None => None,
            Some(ms) => {
                let key = ms.codomain.strip_prefix("weyl.").unwrap_or(&ms.codomain);
                let cs = self
                    .weyl
                    .get(key)
                    .ok_or_else(|| ConfigError::Invalid(format!("map codomain `{}` is not declared", ms.codomain)))?;
                let cchart = chart_from(&cs.coords, &cs.sample_box, cs.orientation, true)?;
                if let Some(rows) = &cs.complex_structure {
                    codomain_j = Some(complex(&cchart, rows)?);
                }
                let cod = structure(cchart, cs.metric.as_deref(), cs.lee_form.as_deref())?;
                let comps: Vec<&str> = ms.components.iter().map(String::as_str).collect();
                Some(MapSpec::parse(domain.clone(), cod, &comps)?)
            }
        };
        let distribution = match &self.distribution {
            None => None,
            Some(d) => {
                let f: Vec<Vec<&str>> = d.fields.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
                Some(DistributionSpec::explicit(&chart, &f)?)
            }
        };
        let complex_structure = match &self.complex_structure {
            None => None,
            Some(cs) => Some(complex(&chart, &cs.rows)?),
        };
        let gt_k = match &self.gauduchon_tod {
            None => None,
            Some(gt) => Some(chart.parse(&gt.k)?),
        };
        if let Some(t) = self.run.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ConfigError::Invalid(format!("run.tol must be positive, got {t}")));
            }
        }
        Ok(Geometry {
            name: self.name.clone(),
            domain,
            map,
            distribution,
            complex_structure,
            codomain_complex_structure: codomain_j,
            gt_k,
            run: self.run.clone(),
            source: self.clone(),
        })
    }
}

impl Geometry {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        ConfigFile::parse(text)?.build()
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.display().to_string(), source: e })?;
        Self::parse(&text)
    }

    pub fn points(&self) -> usize {
        self.run.points.unwrap_or(DEFAULT_POINTS)
    }

    pub fn seed(&self) -> u64 {
        self.run.seed.unwrap_or(0)
    }

    pub fn tol(&self) -> f64 {
        self.run.tol.unwrap_or(DEFAULT_TOL)
    }

    /// The same geometry with the domain chart orientation replaced.
    pub fn with_orientation(&self, orientation: i8) -> Self {
        let mut g = self.clone();
        g.domain = self.domain.with_chart(self.domain.chart().with_orientation(orientation));
        g.map = self.map.as_ref().map(|m| m.with_domain(g.domain.clone()));
        g
    }

    /// Domain presentation in the gauge `g/λ²`, `α + d ln λ`; the
    /// Gauduchon–Tod function rescales as `k ↦ λk`.
    pub fn gauge_transformed(&self, lambda: &Expression) -> Self {
        let mut g = self.clone();
        g.domain = self.domain.gauge_transform(lambda);
        g.map = self.map.as_ref().map(|m| m.with_domain(g.domain.clone()));
        g.gt_k = self
            .gt_k
            .as_ref()
            .map(|k| Expression::combine(crate::expr::BinOp::Mul, lambda, k));
        g
    }

    /// Replace the domain Lee form (map domain included).
    pub fn with_domain_lee(&self, lee: Vec<Expression>) -> Result<Self, Error> {
        let mut g = self.clone();
        g.domain = self.domain.with_lee_form(lee)?;
        g.map = self.map.as_ref().map(|m| m.with_domain(g.domain.clone()));
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = r#"
[chart]
coords = ["x", "y", "z"]
box = [[0.5, 1.5], [-1, 1], [-1, 1]]

[metric]
components = ["1", "0", "0", "1", "0", "1"]

[map]
components = ["x", "y"]
codomain = "weyl.codomain"

[weyl.codomain]
coords = ["u", "v"]
box = [[-2, 2], [-2, 2]]
"#;

    #[test]
    fn parses_and_round_trips() {
        let f = ConfigFile::parse(TEXT).unwrap();
        let g = f.build().unwrap();
        assert_eq!(g.domain.dim(), 3);
        assert_eq!(g.map.as_ref().unwrap().n(), 2);
        assert_eq!(g.points(), DEFAULT_POINTS);
        let again = ConfigFile::parse(&f.to_toml()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn rejects_bad_declarations() {
        assert!(matches!(Geometry::parse("[chart]\ncoords = 3"), Err(ConfigError::Toml(_))));
        let bad = TEXT.replace("\"x\", \"y\"]\ncodomain", "\"x\", \"q\"]\ncodomain");
        assert!(matches!(Geometry::parse(&bad), Err(ConfigError::Geometry(_))));
        let missing = TEXT.replace("codomain = \"weyl.codomain\"", "codomain = \"weyl.other\"");
        assert!(matches!(Geometry::parse(&missing), Err(ConfigError::Invalid(_))));
        let extra = format!("{TEXT}\n[bogus]\nx = 1\n");
        assert!(Geometry::parse(&extra).is_err());
    }
}
