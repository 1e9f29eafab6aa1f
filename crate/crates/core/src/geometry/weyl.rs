use crate::error::{Error, Result};
use crate::expr::{BinOp, Expression, Node};
use crate::geometry::Chart;
use crate::linalg::{Mat, Vector};

/// Metric components with first and second derivatives at a point.
#[derive(Clone, Debug)]
pub struct MetricJet {
    pub g: Mat,
    pub g_inv: Mat,
    pub det: f64,
    /// `dg[k] = ∂_k g`.
    pub dg: Vec<Mat>,
    /// `d2g[k][l] = ∂_k ∂_l g`.
    pub d2g: Vec<Vec<Mat>>,
}

impl MetricJet {
    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// `∂_k g⁻¹ = −g⁻¹ (∂_k g) g⁻¹`.
    pub fn d_inverse(&self, k: usize) -> Mat {
        -(&self.g_inv * &self.dg[k] * &self.g_inv)
    }
}

/// Lee form with its first derivatives: `dalpha[(k, l)] = ∂_k α_l`.
#[derive(Clone, Debug)]
pub struct LeeJet {
    pub alpha: Vector,
    pub dalpha: Mat,
}

impl LeeJet {
    pub fn zero(m: usize) -> Self {
        LeeJet { alpha: Vector::zeros(m), dalpha: Mat::zeros(m, m) }
    }

    /// The exterior derivative `(dα)_{kl} = ∂_k α_l − ∂_l α_k`.
    pub fn faraday(&self) -> Mat {
        &self.dalpha - self.dalpha.transpose()
    }
}

/// Metric and Lee-form jets of a Weyl structure at one point.
#[derive(Clone, Debug)]
pub struct WeylJet {
    pub x: Vector,
    pub metric: MetricJet,
    pub lee: LeeJet,
}

/// A conformal class with a Weyl connection, presented in a gauge `(g, α)`.
#[derive(Clone, Debug)]
pub struct WeylStructure {
    chart: Chart,
    metric: Vec<Expression>,
    lee_form: Vec<Expression>,
    floor: f64,
}

fn upper_index(m: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * (2 * m - i + 1) / 2 + (j - i)
}

impl WeylStructure {
    pub const DEFAULT_FLOOR: f64 = 1e-10;

    /// `metric` holds the row-major upper triangle, `m(m+1)/2` entries.
    pub fn new(chart: Chart, metric: Vec<Expression>, lee_form: Vec<Expression>) -> Result<Self> {
        let m = chart.dim();
        if metric.len() != m * (m + 1) / 2 {
            return Err(Error::InvalidDeclaration(format!(
                "metric needs {} upper-triangle entries, got {}",
                m * (m + 1) / 2,
                metric.len()
            )));
        }
        if lee_form.len() != m {
            return Err(Error::InvalidDeclaration(format!("Lee form needs {m} components, got {}", lee_form.len())));
        }
        for e in metric.iter().chain(&lee_form) {
            if e.coords() != chart.coords() {
                return Err(Error::InvalidDeclaration(format!("expression '{e}' is not over the chart coordinates")));
            }
        }
        Ok(WeylStructure { chart, metric, lee_form, floor: Self::DEFAULT_FLOOR })
    }

    /// Parses upper-triangle metric strings and Lee-form strings.
    pub fn parse(chart: Chart, metric: &[&str], lee_form: &[&str]) -> Result<Self> {
        let metric = metric.iter().map(|s| chart.parse(s)).collect::<Result<Vec<_>>>()?;
        let lee = lee_form.iter().map(|s| chart.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(chart, metric, lee)
    }

    /// Euclidean metric with zero Lee form.
    pub fn flat(chart: Chart) -> Self {
        let m = chart.dim();
        let c = chart.coords().clone();
        let metric = (0..m)
            .flat_map(|i| (i..m).map(move |j| (i, j)))
            .map(|(i, j)| Expression::constant(if i == j { 1.0 } else { 0.0 }, c.clone()))
            .collect();
        let lee = (0..m).map(|_| Expression::constant(0.0, c.clone())).collect();
        WeylStructure { chart, metric, lee_form: lee, floor: Self::DEFAULT_FLOOR }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }

    pub fn metric_component(&self, i: usize, j: usize) -> &Expression {
        &self.metric[upper_index(self.dim(), i, j)]
    }

    pub fn metric_upper(&self) -> &[Expression] {
        &self.metric
    }

    pub fn lee_form(&self) -> &[Expression] {
        &self.lee_form
    }

    pub fn with_chart(&self, chart: Chart) -> Self {
        WeylStructure { chart, ..self.clone() }
    }

    /// Same metric, different Lee form.
    pub fn with_lee_form(&self, lee_form: Vec<Expression>) -> Result<Self> {
        Self::new(self.chart.clone(), self.metric.clone(), lee_form).map(|w| w.with_floor(self.floor))
    }

    /// Same metric, Lee form shifted by `beta`.
    pub fn shifted_lee(&self, beta: &[Expression]) -> Result<Self> {
        let lee = self
            .lee_form
            .iter()
            .zip(beta)
            .map(|(a, b)| Expression::combine(BinOp::Add, a, b))
            .collect();
        self.with_lee_form(lee)
    }

    /// The presentation of the same Weyl structure in the gauge `g λ⁻²`,
    /// whose Lee form is `α + λ⁻¹ dλ`.
    pub fn gauge_transform(&self, lambda: &Expression) -> Self {
        let sq = Expression::from_node(
            Node::Pow(Box::new(lambda.root().clone()), Box::new(Node::Num(2.0))),
            lambda.coords().clone(),
        );
        let metric = self.metric.iter().map(|g| Expression::combine(BinOp::Div, g, &sq)).collect();
        let lee = self
            .lee_form
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let dl = Expression::combine(BinOp::Div, &lambda.derivative(k), lambda);
                Expression::combine(BinOp::Add, a, &dl)
            })
            .collect();
        WeylStructure { chart: self.chart.clone(), metric, lee_form: lee, floor: self.floor }
    }

    /// Metric jets at `x`; rejects points where `|det g| ≤ floor`.
    pub fn metric_at(&self, x: &[f64]) -> Result<MetricJet> {
        let m = self.dim();
        let mut g = Mat::zeros(m, m);
        let mut dg = vec![Mat::zeros(m, m); m];
        let mut d2g = vec![vec![Mat::zeros(m, m); m]; m];
        for i in 0..m {
            for j in i..m {
                let e = self.metric_component(i, j);
                if e.is_zero_literal() {
                    continue;
                }
                let jet = e.eval_jet2(x)?;
                for (a, b) in [(i, j), (j, i)] {
                    g[(a, b)] = jet.value();
                    for k in 0..m {
                        dg[k][(a, b)] = jet.grad(k);
                        for l in 0..m {
                            d2g[k][l][(a, b)] = jet.hess(k, l);
                        }
                    }
                }
            }
        }
        let det = g.determinant();
        if det.abs().partial_cmp(&self.floor) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::DegenerateMetric { point: x.to_vec(), det });
        }
        let g_inv = g.clone().try_inverse().ok_or(Error::DegenerateMetric { point: x.to_vec(), det })?;
        Ok(MetricJet { g, g_inv, det, dg, d2g })
    }

    pub fn lee_at(&self, x: &[f64]) -> Result<LeeJet> {
        let m = self.dim();
        let mut lee = LeeJet::zero(m);
        for (l, e) in self.lee_form.iter().enumerate() {
            if e.is_zero_literal() {
                continue;
            }
            let jet = e.eval_jet2(x)?;
            lee.alpha[l] = jet.value();
            for k in 0..m {
                lee.dalpha[(k, l)] = jet.grad(k);
            }
        }
        Ok(lee)
    }

    pub fn jet_at(&self, x: &[f64]) -> Result<WeylJet> {
        Ok(WeylJet {
            x: Vector::from_column_slice(x),
            metric: self.metric_at(x)?,
            lee: self.lee_at(x)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gibbons_hawking() -> WeylStructure {
        let chart = Chart::new(
            ["x1", "x2", "x3", "t"].map(String::from).to_vec(),
            vec![(0.5, 1.5), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)],
            1,
        )
        .unwrap();
        WeylStructure::parse(
            chart,
            &[
                "1 + x1", "0", "0", "0", //
                "1 + x1", "0", "0", //
                "1 + x1 + x2^2/(1 + x1)", "x2/(1 + x1)", //
                "1/(1 + x1)",
            ],
            &["0", "0", "0", "0"],
        )
        .unwrap()
    }

    #[test]
    fn euclidean_metric_is_identity() {
        let w = WeylStructure::flat(Chart::standard(3, -1.0, 1.0).unwrap());
        let j = w.metric_at(&[0.2, -0.4, 0.9]).unwrap();
        assert_eq!(j.g, crate::linalg::eye(3));
        assert!(j.dg.iter().all(|d| d.iter().all(|v| *v == 0.0)));
    }

    #[test]
    fn constant_curvature_rep_at_origin() {
        let chart = Chart::standard(3, -0.8, 0.8).unwrap();
        let c = "4/(1 + x1^2 + x2^2 + x3^2)^2";
        let w = WeylStructure::parse(chart, &[c, "0", "0", c, "0", c], &["0", "0", "0"]).unwrap();
        let j = w.metric_at(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(j.g, crate::linalg::eye(3) * 4.0);
    }

    #[test]
    fn gibbons_hawking_determinant() {
        let j = gibbons_hawking().metric_at(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((j.det - 4.0).abs() < 1e-12);
        assert!((&j.g * &j.g_inv - crate::linalg::eye(4)).abs().max() < 1e-12);
        // det g = h² at an off-axis point too
        let j = gibbons_hawking().metric_at(&[0.7, 0.4, -0.2, 0.3]).unwrap();
        assert!((j.det - 1.7 * 1.7).abs() < 1e-12);
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let chart = Chart::standard(2, -1.0, 1.0).unwrap();
        let w = WeylStructure::parse(chart, &["x1^2", "0", "1"], &["0", "0"]).unwrap();
        assert!(matches!(w.metric_at(&[0.0, 0.5]), Err(Error::DegenerateMetric { .. })));
    }

    #[test]
    fn gauge_transform_rescales_metric_and_shifts_lee() {
        let w = gibbons_hawking();
        let lambda = w.chart().parse("1 + 0.3*x1").unwrap();
        let v = w.gauge_transform(&lambda);
        let x = [0.9, 0.3, -0.5, 0.1];
        let (a, b) = (w.jet_at(&x).unwrap(), v.jet_at(&x).unwrap());
        let l = 1.0 + 0.3 * 0.9;
        assert!((&a.metric.g / (l * l) - &b.metric.g).abs().max() < 1e-14);
        assert!((b.lee.alpha[0] - 0.3 / l).abs() < 1e-14);
        assert!(b.lee.faraday().abs().max() < 1e-14);
    }
}
