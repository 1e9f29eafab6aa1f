//! Second fundamental forms and integrability tensors of a splitting
//! `TM = 𝒱 ⊕ ℋ`, computed from the shape operator `A(X, V) = ℋ(D_X V)`.

use crate::connection::ConnectionCoeffs;
use crate::error::{Error, Result};
use crate::geometry::{DistributionSpec, MapJets, MapSpec, Split, WeylJet, WeylStructure};
use crate::linalg::{inner, Mat, Vector};

/// Where the vertical distribution comes from.
#[derive(Clone, Debug)]
pub enum VerticalSource {
    /// `𝒱 = ker dφ`; `lift` is the horizontal lift `g⁻¹dφᵀP⁻¹`.
    Map { jets: MapJets, lift: Mat },
    /// 𝒱 spanned by explicit fields; `coeff` maps a vertical vector to its
    /// coefficients in the spanning fields.
    Fields { span: Mat, dspan: Vec<Mat>, coeff: Mat },
}

/// Domain jets, connections and the splitting at one point.
#[derive(Clone, Debug)]
pub struct ShapeAt {
    pub jet: WeylJet,
    pub lc: ConnectionCoeffs,
    pub weyl: ConnectionCoeffs,
    pub split: Split,
    pub source: VerticalSource,
}

impl ShapeAt {
    /// Splitting by the fibres of a submersion.
    pub fn from_map(map: &MapSpec, x: &[f64]) -> Result<Self> {
        let w = map.domain();
        let jet = w.jet_at(x)?;
        let jets = map.jets_at(x)?;
        map.check_regular(x, &jets)?;
        let (split, lift) = Split::from_map(
            &jet.metric.g,
            &jet.metric.g_inv,
            &jets,
            w.chart().orientation(),
            map.codomain().chart().orientation(),
            &jet.x,
        )?;
        Ok(Self::assemble(jet, split, VerticalSource::Map { jets, lift }))
    }

    /// Splitting by an explicit vertical distribution.
    pub fn from_fields(w: &WeylStructure, spec: &DistributionSpec, x: &[f64]) -> Result<Self> {
        let jet = w.jet_at(x)?;
        let d = spec.jet_at(x)?;
        let split = Split::from_span(&jet.metric.g, &d.span, w.chart().orientation(), &jet.x)?;
        let g = &jet.metric.g;
        let gram = d.span.transpose() * g * &d.span;
        let gram_inv = gram
            .try_inverse()
            .ok_or_else(|| Error::DegenerateDistribution { point: x.to_vec() })?;
        let coeff = gram_inv * d.span.transpose() * g;
        Ok(Self::assemble(jet, split, VerticalSource::Fields { span: d.span, dspan: d.dspan, coeff }))
    }

    fn assemble(jet: WeylJet, split: Split, source: VerticalSource) -> Self {
        let lc = ConnectionCoeffs::levi_civita(&jet.metric, false);
        let weyl = ConnectionCoeffs::weyl_from_alpha(&jet.metric, &jet.lee.alpha);
        ShapeAt { jet, lc, weyl, split, source }
    }

    /// Same point and splitting with a different domain Lee form value.
    pub fn with_alpha(&self, alpha: &Vector) -> Self {
        let mut s = self.clone();
        s.jet.lee.alpha = alpha.clone();
        s.weyl = ConnectionCoeffs::weyl_from_alpha(&s.jet.metric, alpha);
        s
    }

    pub fn g(&self) -> &Mat {
        &self.jet.metric.g
    }

    pub fn metric(&self) -> &crate::geometry::MetricJet {
        &self.jet.metric
    }

    pub fn alpha(&self) -> &Vector {
        &self.jet.lee.alpha
    }

    pub fn map_jets(&self) -> Option<(&MapJets, &Mat)> {
        match &self.source {
            VerticalSource::Map { jets, lift } => Some((jets, lift)),
            VerticalSource::Fields { .. } => None,
        }
    }

    /// `A(X, V) = ℋ(Γ-covariant derivative of a vertical extension of V along X)`.
    pub fn a_tensor(&self, gamma: &ConnectionCoeffs, x: &Vector, v: &Vector) -> Vector {
        match &self.source {
            VerticalSource::Map { jets, lift } => {
                let w = &jets.dphi * gamma.apply(x, v) - jets.second_on(x, v);
                lift * w
            }
            VerticalSource::Fields { span, dspan, coeff } => {
                let c = coeff * v;
                let m = x.len();
                let mut out = Vector::zeros(m);
                for a in 0..span.ncols() {
                    let s = span.column(a).into_owned();
                    let mut ds = Vector::zeros(m);
                    for i in 0..m {
                        ds += dspan[i].column(a) * x[i];
                    }
                    out += (ds + gamma.apply(x, &s)) * c[a];
                }
                &self.split.proj_h * out
            }
        }
    }

    /// `B^𝒱(U, V) = ½ ℋ(D_U V + D_V U)`.
    pub fn b_vertical(&self, gamma: &ConnectionCoeffs, u: &Vector, v: &Vector) -> Vector {
        (self.a_tensor(gamma, u, v) + self.a_tensor(gamma, v, u)) * 0.5
    }

    pub fn trace_b_vertical(&self, gamma: &ConnectionCoeffs) -> Vector {
        let m = self.split.point.len();
        (0..self.split.k()).fold(Vector::zeros(m), |acc, a| {
            let v = self.split.v(a);
            acc + self.a_tensor(gamma, &v, &v)
        })
    }

    /// `B^ℋ(X, Y) = ½ 𝒱(D_X Y + D_Y X)`, via `g(D_X Y, V) = −g(Y, D_X V)`
    /// up to terms that vanish for Weyl connections.
    pub fn b_horizontal(&self, gamma: &ConnectionCoeffs, x: &Vector, y: &Vector) -> Vector {
        let g = self.g();
        let m = self.split.point.len();
        (0..self.split.k()).fold(Vector::zeros(m), |acc, a| {
            let v = self.split.v(a);
            let c = -0.5 * (inner(g, y, &self.a_tensor(gamma, x, &v)) + inner(g, x, &self.a_tensor(gamma, y, &v)));
            acc + v * c
        })
    }

    pub fn trace_b_horizontal(&self, gamma: &ConnectionCoeffs) -> Vector {
        let m = self.split.point.len();
        (0..self.split.n()).fold(Vector::zeros(m), |acc, a| {
            let e = self.split.h(a);
            acc + self.b_horizontal(gamma, &e, &e)
        })
    }

    /// `I^ℋ(X, Y) = −𝒱[X, Y]` for horizontal X, Y.
    pub fn integrability(&self, x: &Vector, y: &Vector) -> Vector {
        let g = self.g();
        let m = self.split.point.len();
        (0..self.split.k()).fold(Vector::zeros(m), |acc, a| {
            let v = self.split.v(a);
            let c = inner(g, y, &self.a_tensor(&self.lc, x, &v)) - inner(g, x, &self.a_tensor(&self.lc, y, &v));
            acc + v * c
        })
    }

    /// Largest component of `I^ℋ` over horizontal frame pairs.
    pub fn integrability_norm(&self) -> f64 {
        let n = self.split.n();
        let mut r = 0.0_f64;
        for a in 0..n {
            for b in a + 1..n {
                let i = self.integrability(&self.split.h(a), &self.split.h(b));
                r = r.max(inner(self.g(), &i, &i).sqrt());
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;

    fn killing() -> MapSpec {
        let chart = Chart::new(
            vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
            vec![(0.5, 1.5), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)],
            1,
        )
        .unwrap();
        let target = Chart::target(
            vec!["y1".into(), "y2".into(), "y3".into()],
            vec![(0.25, 2.5), (-1.0, 1.0), (-1.0, 1.0)],
            1,
        )
        .unwrap();
        MapSpec::parse(WeylStructure::flat(chart), WeylStructure::flat(target), &["sqrt(x1^2 + x2^2)", "x3", "x4"])
            .unwrap()
    }

    #[test]
    fn circle_fibres_have_mean_curvature_one_over_r() {
        let s = ShapeAt::from_map(&killing(), &[0.6, 0.8, 0.1, 0.2]).unwrap();
        let t = s.trace_b_vertical(&s.lc);
        // −(1/r) ∂_r with r = 1
        assert!((t - Vector::from_vec(vec![-0.6, -0.8, 0.0, 0.0])).abs().max() < 1e-12);
        assert!(s.integrability_norm() < 1e-12);
    }

    #[test]
    fn explicit_fields_agree_with_map_fibres() {
        let map = killing();
        let x = [0.9, -0.3, 0.2, 0.4];
        let by_map = ShapeAt::from_map(&map, &x).unwrap();
        let spec = DistributionSpec::explicit(map.domain().chart(), &[vec!["-x2", "x1", "0", "0"]]).unwrap();
        let by_fields = ShapeAt::from_fields(map.domain(), &spec, &x).unwrap();
        let a = by_map.trace_b_vertical(&by_map.lc);
        let b = by_fields.trace_b_vertical(&by_fields.lc);
        assert!((a - b).abs().max() < 1e-12);
        let th = by_fields.trace_b_horizontal(&by_fields.lc);
        assert!(th.abs().max() < 1e-12);
    }

    #[test]
    fn weyl_shift_moves_vertical_trace() {
        let map = killing();
        let x = [0.9, -0.3, 0.2, 0.4];
        let s = ShapeAt::from_map(&map, &x).unwrap();
        let alpha = Vector::from_vec(vec![0.3, -0.1, 0.5, 0.2]);
        let shifted = s.with_alpha(&alpha);
        let lhs = shifted.trace_b_vertical(&shifted.weyl);
        let rhs = s.trace_b_vertical(&s.lc) - &s.split.proj_h * crate::linalg::sharp(&s.jet.metric.g_inv, &alpha);
        assert!((lhs - rhs).abs().max() < 1e-12);
    }
}
