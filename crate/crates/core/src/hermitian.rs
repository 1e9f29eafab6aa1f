//! Almost-Hermitian data: J fields, Kähler forms, the Nijenhuis tensor,
//! `trace_g(DJ)`, holomorphic maps and the almost complex structure induced
//! by a 2-plane field in dimension 4.

use crate::connection::{hermitian_weyl, ConnectionCoeffs};
use crate::error::{dim_error, Error, Result};
use crate::expr::Expression;
use crate::geometry::{Chart, MapSpec, Split, WeylStructure};
use crate::linalg::{eye, richardson, Mat, Tensor3, Vector};
use crate::morphism::{tension_with, MapPoint};
use crate::parallel::per_point;
use crate::report::{Series, Tolerance, Verdict, VerdictReport};
use crate::shape::ShapeAt;

/// Tolerance for `J² = −I` and metric compatibility.
pub const J_TOL: f64 = 1e-10;

/// An endomorphism field given by expressions, `rows[a][b] = J^a_b`.
#[derive(Clone, Debug)]
pub struct AlmostComplexField {
    rows: Vec<Vec<Expression>>,
}

/// Value and first derivatives of J at a point: `dj[k] = ∂_k J`.
#[derive(Clone, Debug)]
pub struct JJet {
    pub j: Mat,
    pub dj: Vec<Mat>,
}

impl AlmostComplexField {
    pub fn new(rows: Vec<Vec<Expression>>) -> Result<Self> {
        let m = rows.len();
        if !m.is_multiple_of(2) || rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidDeclaration(format!("complex structure must be an even square matrix, got {m} rows")));
        }
        Ok(AlmostComplexField { rows })
    }

    pub fn parse(chart: &Chart, rows: &[Vec<&str>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|t| chart.parse(t)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
        )
    }

    /// The standard structure `∂_{2i−1} ↦ ∂_{2i}` on a chart.
    pub fn standard(chart: &Chart) -> Result<Self> {
        let m = chart.dim();
        let rows: Vec<Vec<String>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| match (a % 2, a / 2 == b / 2, b % 2) {
                        (1, true, 0) => "1".to_string(),
                        (0, true, 1) => "-1".to_string(),
                        _ => "0".to_string(),
                    })
                    .collect()
            })
            .collect();
        let refs: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
        Self::parse(chart, &refs)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Expression>] {
        &self.rows
    }

    pub fn at(&self, x: &[f64]) -> Result<JJet> {
        let m = self.dim();
        let mut j = Mat::zeros(m, m);
        let mut dj = vec![Mat::zeros(m, m); m];
        for a in 0..m {
            for b in 0..m {
                let e = &self.rows[a][b];
                if e.is_zero_literal() {
                    continue;
                }
                let jet = e.eval_jet2::<f64>(x)?;
                j[(a, b)] = jet.value();
                for (k, d) in dj.iter_mut().enumerate() {
                    d[(a, b)] = jet.grad(k);
                }
            }
        }
        Ok(JJet { j, dj })
    }
}

/// Residuals of `J² = −I` and `JᵀgJ = g`.
pub fn compatibility(g: &Mat, j: &Mat) -> (f64, f64) {
    let m = g.nrows();
    let sq = (j * j + eye(m)).abs().max();
    let comp = (j.transpose() * g * j - g).abs().max();
    (sq, comp)
}

pub fn require_compatible(g: &Mat, j: &Mat, x: &[f64]) -> Result<()> {
    let (sq, comp) = compatibility(g, j);
    let scale = 1.0 + g.abs().max();
    if sq > J_TOL * scale || comp > J_TOL * scale {
        return Err(Error::IncompatibleJ {
            point: x.to_vec(),
            detail: format!("|J² + I| = {sq:e}, |JᵀgJ − g| = {comp:e}"),
        });
    }
    Ok(())
}

/// `ω(X, Y) = g(JX, Y)`.
pub fn kahler_form(g: &Mat, j: &Mat, x: &[f64]) -> Result<Mat> {
    require_compatible(g, j, x)?;
    Ok(j.transpose() * g)
}

/// `N^k_{ij}` for `N(∂_i, ∂_j) = [J∂_i, J∂_j] − J[J∂_i, ∂_j] − J[∂_i, J∂_j] − [∂_i, ∂_j]`.
pub fn nijenhuis(jet: &JJet) -> Tensor3 {
    let m = jet.j.nrows();
    let (j, dj) = (&jet.j, &jet.dj);
    let mut n = Tensor3::zeros(m);
    for k in 0..m {
        for a in 0..m {
            for b in 0..m {
                let mut v = 0.0;
                for l in 0..m {
                    v += j[(l, a)] * dj[l][(k, b)] - j[(l, b)] * dj[l][(k, a)];
                    v -= j[(k, l)] * (dj[a][(l, b)] - dj[b][(l, a)]);
                }
                n.set(k, a, b, v);
            }
        }
    }
    n
}

/// `(D_i J)^a_b = ∂_i J^a_b + Γ^a_{ic} J^c_b − J^a_c Γ^c_{ib}`.
pub fn covariant_dj(gamma: &ConnectionCoeffs, jet: &JJet, i: usize) -> Mat {
    let m = jet.j.nrows();
    let gi = Mat::from_fn(m, m, |a, c| gamma.gamma.get(a, i, c));
    &jet.dj[i] + &gi * &jet.j - &jet.j * gi
}

/// `D_X J` for a vector X.
pub fn covariant_dj_along(gamma: &ConnectionCoeffs, jet: &JJet, x: &Vector) -> Mat {
    let m = jet.j.nrows();
    (0..m).fold(Mat::zeros(m, m), |acc, i| acc + covariant_dj(gamma, jet, i) * x[i])
}

/// `trace_g(DJ) = g^{ij} (D_i J)(∂_j)`.
pub fn dj_trace(gamma: &ConnectionCoeffs, g_inv: &Mat, jet: &JJet) -> Vector {
    let m = jet.j.nrows();
    let mut out = Vector::zeros(m);
    for i in 0..m {
        let d = covariant_dj(gamma, jet, i);
        for jj in 0..m {
            if g_inv[(i, jj)] != 0.0 {
                out += d.column(jj) * g_inv[(i, jj)];
            }
        }
    }
    out
}

/// `dφ∘J^M − J^N∘dφ`, largest entry.
pub fn holomorphy_residual(dphi: &Mat, jm: &Mat, jn: &Mat) -> f64 {
    (dphi * jm - jn * dphi).abs().max()
}

/// Holomorphy at every point.
pub fn holomorphy_check(
    map: &MapSpec,
    jm: &AlmostComplexField,
    jn: &AlmostComplexField,
    points: &[Vec<f64>],
    tol: Tolerance,
) -> Result<VerdictReport> {
    let rows = per_point(points, |x| {
        let jets = map.jets_at(x)?;
        let y: Vec<f64> = jets.phi.iter().copied().collect();
        let (a, b) = (jm.at(x)?.j, jn.at(&y)?.j);
        Ok((holomorphy_residual(&jets.dphi, &a, &b), jets.dphi.abs().max()))
    })?;
    let mut s = Series::default();
    for (r, sc) in rows {
        s.push(r, sc);
    }
    Ok(VerdictReport::from_series("holomorphic", points.len(), 0, &s, tol))
}

/// Left side of the holomorphic-map identity
/// `trace_c φ*(D^N J^N) − dφ(trace_c(D^M J^M)) + J^N(trace_c(Ddφ))`.
pub fn lemma34_residual(mp: &MapPoint, jm: &JJet, jn: &JJet, tol: Tolerance) -> Result<(f64, f64)> {
    let hol = holomorphy_residual(mp.dphi(), &jm.j, &jn.j);
    if !tol.accepts(hol, mp.dphi().abs().max()) {
        return Err(Error::NotHolomorphic { point: mp.point(), residual: hol });
    }
    let (m, n) = (mp.m(), mp.n());
    let dphi = mp.dphi();
    let ginv = mp.g_inv();
    let dn: Vec<Mat> = (0..n).map(|a| covariant_dj(&mp.n_weyl, jn, a)).collect();
    let mut first = Vector::zeros(n);
    for i in 0..m {
        let di = (0..n).fold(Mat::zeros(n, n), |acc, a| acc + &dn[a] * dphi[(a, i)]);
        for jj in 0..m {
            if ginv[(i, jj)] != 0.0 {
                first += &di * dphi.column(jj) * ginv[(i, jj)];
            }
        }
    }
    let second = dphi * dj_trace(&mp.shape.weyl, ginv, jm);
    let (tau, ts) = tension_with(mp, &mp.shape.weyl, &mp.n_weyl);
    let third = &jn.j * tau;
    let scale = first.abs().max().max(second.abs().max()).max(third.abs().max()).max(ts);
    Ok(((first - second + third).abs().max(), scale))
}

/// The positive almost complex structure of an oriented 4-manifold with a
/// rank-2 vertical distribution: rotation by a right angle on 𝒱 and on ℋ,
/// with `(V₁, JV₁, X₁, JX₁)` positive.
pub fn induced_positive_j(split: &Split) -> Result<Mat> {
    if split.point.len() != 4 || split.k() != 2 {
        return Err(dim_error("induced_positive_j", "needs m = 4 with a rank-2 vertical distribution"));
    }
    let f = split.frame_matrix();
    let mut j0 = Mat::zeros(4, 4);
    j0[(1, 0)] = 1.0;
    j0[(0, 1)] = -1.0;
    j0[(3, 2)] = 1.0;
    j0[(2, 3)] = -1.0;
    let f_inv = f.clone().try_inverse().ok_or_else(|| Error::DegenerateDistribution { point: split.point.iter().copied().collect() })?;
    Ok(&f * j0 * f_inv)
}

/// Induced J with derivatives by central differences, for the fibres of a map.
pub fn induced_j_jet(map: &MapSpec, x: &[f64]) -> Result<JJet> {
    let value = |y: &[f64]| -> Result<Mat> { induced_positive_j(&ShapeAt::from_map(map, y)?.split) };
    let j = value(x)?;
    let xv = Vector::from_column_slice(x);
    let m = x.len();
    let mut dj = Vec::with_capacity(m);
    for k in 0..m {
        let mut dir = Vector::zeros(m);
        dir[k] = 1.0;
        let d = richardson(
            |y: &Vector| {
                let p: Vec<f64> = y.iter().copied().collect();
                value(&p).map(|mat| Vector::from_column_slice(mat.as_slice()))
            },
            &xv,
            &dir,
            1e-3,
        )?;
        dj.push(Mat::from_column_slice(m, m, d.as_slice()));
    }
    Ok(JJet { j, dj })
}

/// Largest `|N_J|` over coordinate pairs with a scale.
pub fn nijenhuis_norm(jet: &JJet) -> (f64, f64) {
    let n = nijenhuis(jet);
    let scale = jet.dj.iter().fold(0.0_f64, |a, d| a.max(d.abs().max())) * jet.j.abs().max();
    (n.max_abs(), scale)
}

/// Integrability verdict for an expression-defined J.
pub fn nijenhuis_check(field: &AlmostComplexField, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let rows = per_point(points, |x| Ok(nijenhuis_norm(&field.at(x)?)))?;
    let mut s = Series::default();
    for (r, sc) in rows {
        s.push(r, sc);
    }
    Ok(VerdictReport::from_series("nijenhuis", points.len(), 0, &s, tol))
}

/// Hermitian Weyl postconditions: `trace_g(DJ) = 0` and, in dimension 4,
/// `D_{JX}J + J D_X J = 0` for coordinate X.
pub fn hermitian_weyl_at(w: &WeylStructure, field: &AlmostComplexField, x: &[f64]) -> Result<(Vector, f64, f64)> {
    let metric = w.metric_at(x)?;
    let jet = field.at(x)?;
    require_compatible(&metric.g, &jet.j, x)?;
    let alpha = hermitian_weyl(&metric, &jet)?;
    let d = ConnectionCoeffs::weyl_from_alpha(&metric, &alpha);
    let trace = dj_trace(&d, &metric.g_inv, &jet).abs().max();
    let mut anti = 0.0_f64;
    if w.dim() == 4 {
        for i in 0..4 {
            let mut e = Vector::zeros(4);
            e[i] = 1.0;
            let je = &jet.j * &e;
            let r = covariant_dj_along(&d, &jet, &je) + &jet.j * covariant_dj_along(&d, &jet, &e);
            anti = anti.max(r.abs().max());
        }
    }
    Ok((alpha, trace, anti))
}

pub fn hermitian_weyl_check(w: &WeylStructure, field: &AlmostComplexField, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let rows = per_point(points, |x| {
        let (a, t, anti) = hermitian_weyl_at(w, field, x)?;
        Ok((t, anti, a.abs().max()))
    })?;
    let (mut tr, mut an) = (Series::default(), Series::default());
    for (t, a, sc) in rows {
        tr.push(t, sc);
        an.push(a, sc);
    }
    let mut r = VerdictReport::from_series("hermitian-weyl", points.len(), 0, &tr, tol).with_measure("trace", &tr, tol);
    if w.dim() == 4 {
        r = r.with_measure("anticommutation", &an, tol);
        r.verdict = Verdict::from_bool(tr.verdict(tol).passed() && an.verdict(tol).passed());
    }
    Ok(r)
}

/// Holomorphic-map identity residuals over the points.
pub fn lemma34_check(
    map: &MapSpec,
    jm: &AlmostComplexField,
    jn: &AlmostComplexField,
    points: &[Vec<f64>],
    tol: Tolerance,
) -> Result<VerdictReport> {
    let rows = per_point(points, |x| {
        let mp = MapPoint::new(map, x)?;
        let y: Vec<f64> = mp.jets().phi.iter().copied().collect();
        lemma34_residual(&mp, &jm.at(x)?, &jn.at(&y)?, tol)
    })?;
    let mut s = Series::default();
    for (r, sc) in rows {
        s.push(r, sc);
    }
    Ok(VerdictReport::from_series("lemma34", points.len(), 0, &s, Tolerance::new(tol.rel.min(1e-8))))
}

/// Harmonic morphism with integrable J versus J parallel along the fibres.
pub fn prop311_report(map: &MapSpec, jm: &AlmostComplexField, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    if map.m() != 4 || map.n() != 2 {
        return Err(dim_error("prop311_report", "needs a map from dimension 4 to dimension 2"));
    }
    let rows = per_point(points, |x| {
        let mp = MapPoint::new(map, x)?;
        let jet = jm.at(x)?;
        require_compatible(mp.g(), &jet.j, x)?;
        let (tau, ts) = tension_with(&mp, &mp.shape.weyl, &mp.n_weyl);
        let h = crate::morphism::hwc_at(&mp);
        let (nj, ns) = nijenhuis_norm(&jet);
        let mut par = 0.0_f64;
        for a in 0..mp.shape.split.k() {
            par = par.max(covariant_dj_along(&mp.shape.weyl, &jet, &mp.shape.split.v(a)).abs().max());
        }
        let pscale = jet.dj.iter().fold(0.0_f64, |a, d| a.max(d.abs().max())) + mp.shape.weyl.gamma.max_abs();
        Ok(([tau.abs().max(), h.residual, nj, par], [ts, h.lambda_sq, ns, pscale]))
    })?;
    let mut series: Vec<Series> = vec![Series::default(); 4];
    for (r, s) in &rows {
        for i in 0..4 {
            series[i].push(r[i], s[i]);
        }
    }
    let a = series[0].verdict(tol).passed() && series[1].verdict(tol).passed() && series[2].verdict(tol).passed();
    let b = series[3].verdict(tol).passed();
    let mut rep = VerdictReport::new("prop311", points.len(), 0)
        .with_measure("tension", &series[0], tol)
        .with_measure("hwc", &series[1], tol)
        .with_measure("nijenhuis", &series[2], tol)
        .with_measure("fibre_parallel", &series[3], tol)
        .with_flag("equivalence", a == b)
        .with_value("verdict_a", f64::from(u8::from(a)))
        .with_value("verdict_b", f64::from(u8::from(b)));
    rep.verdict = Verdict::from_bool(a == b);
    rep.max_residual = series[3].max_residual();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat4() -> (Chart, WeylStructure) {
        let c = Chart::standard(4, 0.3, 1.0).unwrap();
        (c.clone(), WeylStructure::flat(c))
    }

    #[test]
    fn standard_structure_is_kahler_on_flat_space() {
        let (c, w) = flat4();
        let j = AlmostComplexField::standard(&c).unwrap();
        let x = [0.5; 4];
        let jet = j.at(&x).unwrap();
        let g = w.metric_at(&x).unwrap().g;
        let om = kahler_form(&g, &jet.j, &x).unwrap();
        assert_eq!(om[(0, 1)], 1.0);
        assert_eq!(om[(2, 3)], 1.0);
        assert_eq!(&om + om.transpose(), Mat::zeros(4, 4));
        assert_eq!(nijenhuis(&jet).max_abs(), 0.0);
        let d = ConnectionCoeffs::levi_civita(&w.metric_at(&x).unwrap(), false);
        assert_eq!(dj_trace(&d, &g, &jet).abs().max(), 0.0);
    }

    #[test]
    fn weyl_shift_trace_closed_form() {
        // trace_g(D J) = trace_g(∇J) + (m−2) J α♯
        let (c, w) = flat4();
        let jet = AlmostComplexField::standard(&c).unwrap().at(&[0.5; 4]).unwrap();
        let metric = w.metric_at(&[0.5; 4]).unwrap();
        let alpha = Vector::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
        let d = ConnectionCoeffs::weyl_from_alpha(&metric, &alpha);
        let t = dj_trace(&d, &metric.g_inv, &jet);
        assert!((t - Vector::from_vec(vec![0.0, 2.0, 0.0, 0.0])).abs().max() < 1e-15);
    }

    #[test]
    fn hermitian_weyl_on_conformally_flat_metric() {
        let c = Chart::standard(4, 0.3, 1.0).unwrap();
        let f = "exp(2*(0.3*x1 - 0.4*x2*x3 + 0.2*x4^2))";
        let up = [f, "0", "0", "0", f, "0", "0", f, "0", f];
        let w = WeylStructure::parse(c.clone(), &up, &["0"; 4]).unwrap();
        let j = AlmostComplexField::standard(&c).unwrap();
        let (alpha, trace, anti) = hermitian_weyl_at(&w, &j, &[0.4, 0.6, 0.7, 0.5]).unwrap();
        assert!(trace < 1e-12 && anti < 1e-12);
        // D is the flat connection of δ: α = −df
        let want = [-0.3, 0.4 * 0.7, 0.4 * 0.6, -0.4 * 0.5];
        for i in 0..4 {
            assert!((alpha[i] - want[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn sheared_structure_is_not_integrable() {
        let c = Chart::standard(4, -1.0, 1.0).unwrap();
        let rows = vec![
            vec!["0", "-1", "0", "0"],
            vec!["1", "0", "0", "0"],
            vec!["0", "-0.5*x4", "0", "-1"],
            vec!["-0.5*x4", "0", "1", "0"],
        ];
        let j = AlmostComplexField::parse(&c, &rows).unwrap();
        let jet = j.at(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!((&jet.j * &jet.j + eye(4)).abs().max() < 1e-15);
        let n = nijenhuis(&jet);
        assert!(n.max_abs() > 0.01);
        for a in 0..4 {
            for k in 0..4 {
                assert_eq!(n.get(k, a, a), 0.0);
            }
        }
    }

    #[test]
    fn induced_structure_of_coordinate_projection_is_standard() {
        let c = Chart::standard(4, 0.3, 1.0).unwrap();
        let target = Chart::standard(2, -2.0, 2.0).unwrap();
        let map = MapSpec::parse(WeylStructure::flat(c.clone()), WeylStructure::flat(target), &["x1", "x2"]).unwrap();
        let jet = induced_j_jet(&map, &[0.5, 0.6, 0.7, 0.8]).unwrap();
        let std = AlmostComplexField::standard(&c).unwrap().at(&[0.5; 4]).unwrap();
        assert!((&jet.j - &std.j).abs().max() < 1e-14);
        assert!(nijenhuis_norm(&jet).0 < 1e-12);
    }
}
