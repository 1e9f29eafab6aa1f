//! Twistorial maps in dimensions (3,2), (4,2) and (4,3), the partial
//! connections `D± = ℋD ± *_ℋI^ℋ`, and the horizontal Ricci conditions.

use crate::connection::{minimal_weyl, partial_lee_difference};
use crate::curvature::{curvature_at, CurvatureAtPoint};
use crate::error::{dim_error, Result};
use crate::geometry::{null_pair, complex_inner, MapSpec};
use crate::hermitian::{induced_j_jet, nijenhuis_norm};
use crate::linalg::{inner, richardson, Mat, Vector};
use crate::morphism::{horizontal_action, hwc_at, pullback_partial_connection, tension_with, MapPoint};
use crate::parallel::per_point;
use crate::report::{Series, Tolerance, Verdict, VerdictReport};
use crate::shape::ShapeAt;
use num_complex::Complex64;

/// Coefficient of `*_ℋI^ℋ` in the horizontal relation between `D^M` and the
/// minimal Weyl connection.
pub const EQ41_COEFFICIENT: f64 = 0.5;

/// Lee forms of `ℋD` and `D±` relative to `ℋ∇^g`, as covectors vanishing on 𝒱.
#[derive(Clone, Debug)]
pub struct DPlusMinus {
    pub point: Vector,
    /// Minimal Weyl Lee form restricted to ℋ.
    pub lee_hd: Vector,
    /// `*_ℋI^ℋ`.
    pub star_i: Vector,
    pub plus: Vector,
    pub minus: Vector,
    /// Full minimal Weyl Lee form.
    pub minimal: Vector,
}

/// `*_ℋI^ℋ = ι₂₃E¹ + ι₃₁E² + ι₁₂E³` with `ι_ab = g(I^ℋ(E_a, E_b), U)` for the
/// positive frame `(U, E₁, E₂, E₃)`.
pub fn star_integrability(shape: &ShapeAt) -> Result<Vector> {
    let split = &shape.split;
    if split.point.len() != 4 || split.k() != 1 {
        return Err(dim_error("star_integrability", "needs m = 4 with rank-1 fibres"));
    }
    let g = shape.g();
    let u = split.v(0);
    let e: Vec<Vector> = (0..3).map(|a| split.h(a)).collect();
    let iota = |a: usize, b: usize| inner(g, &shape.integrability(&e[a], &e[b]), &u);
    let coef = [iota(1, 2), iota(2, 0), iota(0, 1)];
    Ok((0..3).fold(Vector::zeros(4), |acc, a| acc + g * &e[a] * coef[a]))
}

pub fn dpm_forms(shape: &ShapeAt) -> Result<DPlusMinus> {
    let star_i = star_integrability(shape)?;
    let minimal = minimal_weyl(shape);
    let lee_hd = shape.split.proj_h.transpose() * &minimal;
    Ok(DPlusMinus {
        point: shape.split.point.clone(),
        plus: &lee_hd + &star_i,
        minus: &lee_hd - &star_i,
        lee_hd,
        star_i,
        minimal,
    })
}

/// Lee form of the pullback of `D^N` relative to `ℋ∇^g`.
pub fn pullback_lee(mp: &MapPoint, tol: Tolerance) -> Result<Vector> {
    let pull = pullback_partial_connection(mp, tol)?;
    let hlc = horizontal_action(mp, &mp.shape.lc)?;
    Ok(partial_lee_difference(&pull, &hlc, &mp.shape.split, mp.g(), mp.dphi())?.values)
}

/// `A± = D± − D^N` as Lee forms on ℋ.
pub fn a_pm(mp: &MapPoint, tol: Tolerance) -> Result<(Vector, Vector)> {
    let d = dpm_forms(&mp.shape)?;
    let nu = pullback_lee(mp, tol)?;
    Ok((&d.plus - &nu, &d.minus - &nu))
}

fn require_dims(map: &MapSpec, m: usize, n: usize, op: &'static str) -> Result<()> {
    if map.m() != m || map.n() != n {
        return Err(dim_error(op, format!("needs dimensions ({m},{n}), got ({},{})", map.m(), map.n())));
    }
    Ok(())
}

fn flipped(map: &MapSpec) -> MapSpec {
    let w = map.domain();
    map.with_domain(w.with_chart(w.chart().with_orientation(-w.chart().orientation())))
}

/// Residual of `pullback D^N = D₊` at a point.
pub fn twistorial_4to3_at(mp: &MapPoint, tol: Tolerance) -> Result<(f64, f64)> {
    let (plus, _) = a_pm(mp, tol)?;
    let d = dpm_forms(&mp.shape)?;
    let scale = d.lee_hd.abs().max() + d.star_i.abs().max() + mp.alpha_n().abs().max();
    Ok((plus.abs().max(), scale))
}

fn series_of(rows: &[(f64, f64)]) -> Series {
    let mut s = Series::default();
    for &(r, sc) in rows {
        s.push(r, sc);
    }
    s
}

/// 4→3 twistoriality for the declared orientation, with the reversed
/// orientation reported alongside.
pub fn twistorial_4to3(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    require_dims(map, 4, 3, "twistorial_4to3")?;
    let rev = flipped(map);
    let rows = per_point(points, |x| {
        let a = twistorial_4to3_at(&MapPoint::new(map, x)?, tol)?;
        let b = twistorial_4to3_at(&MapPoint::new(&rev, x)?, tol)?;
        Ok((a, b))
    })?;
    let s = series_of(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
    let r = series_of(&rows.iter().map(|r| r.1).collect::<Vec<_>>());
    Ok(VerdictReport::from_series("twistorial", points.len(), 0, &s, tol).with_measure("reversed_orientation", &r, tol))
}

/// 4→2 twistoriality: integrability of the induced positive J.
pub fn twistorial_4to2(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    require_dims(map, 4, 2, "twistorial_4to2")?;
    let rev = flipped(map);
    let rows = per_point(points, |x| Ok((nijenhuis_norm(&induced_j_jet(map, x)?), nijenhuis_norm(&induced_j_jet(&rev, x)?))))?;
    let s = series_of(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
    let r = series_of(&rows.iter().map(|r| r.1).collect::<Vec<_>>());
    // Derivatives of the induced J come from central differences.
    let fd = Tolerance::new(tol.rel.max(1e-6));
    Ok(VerdictReport::from_series("twistorial", points.len(), 0, &s, fd).with_measure("reversed_orientation", &r, fd))
}

/// Geodesic-fibre residual `|ℋ(D_V V)|` for unit vertical V.
pub fn geodesic_fibre_at(mp: &MapPoint) -> (f64, f64) {
    let v = mp.shape.split.v(0);
    let a = mp.g() * mp.shape.a_tensor(&mp.shape.weyl, &v, &v);
    let scale = (mp.g() * mp.shape.a_tensor(&mp.shape.lc, &v, &v)).abs().max() + mp.alpha_m().abs().max();
    (a.abs().max(), scale)
}

/// 3→2 twistoriality (geodesic fibres), with agreement against the
/// harmonic-morphism verdict.
pub fn twistorial_3to2(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    require_dims(map, 3, 2, "twistorial_3to2")?;
    let rows = per_point(points, |x| {
        let mp = MapPoint::new(map, x)?;
        let (tau, ts) = tension_with(&mp, &mp.shape.weyl, &mp.n_weyl);
        let h = hwc_at(&mp);
        Ok((geodesic_fibre_at(&mp), (tau.abs().max(), ts), (h.residual, h.lambda_sq)))
    })?;
    let geo = series_of(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
    let tau = series_of(&rows.iter().map(|r| r.1).collect::<Vec<_>>());
    let hwc = series_of(&rows.iter().map(|r| r.2).collect::<Vec<_>>());
    let hm = tau.verdict(tol).passed() && hwc.verdict(tol).passed();
    Ok(VerdictReport::from_series("twistorial", points.len(), 0, &geo, tol)
        .with_measure("tension", &tau, tol)
        .with_measure("hwc", &hwc, tol)
        .with_flag("agrees_with_harmonic_morphism", hm == geo.verdict(tol).passed()))
}

/// Residual of `α_M|ℋ − α_D|ℋ = coef·*_ℋI^ℋ`.
pub fn eq41_residual(shape: &ShapeAt, coef: f64) -> Result<(f64, f64)> {
    let d = dpm_forms(shape)?;
    let am = shape.split.proj_h.transpose() * shape.alpha();
    let r = &am - &d.lee_hd - &d.star_i * coef;
    Ok((r.abs().max(), am.abs().max() + d.lee_hd.abs().max() + d.star_i.abs().max()))
}

/// Per-point ingredients of the 4→3 two-of-three theorem.
fn thm44a_at(mp: &MapPoint, coef: f64, tol: Tolerance) -> Result<[(f64, f64); 4]> {
    let (tau, ts) = tension_with(mp, &mp.shape.weyl, &mp.n_weyl);
    let h = hwc_at(mp);
    let tw = if tol.accepts(h.residual, h.lambda_sq) { twistorial_4to3_at(mp, tol)? } else { (f64::INFINITY, 0.0) };
    Ok([(tau.abs().max(), ts), (h.residual, h.lambda_sq), tw, eq41_residual(&mp.shape, coef)?])
}

/// (a1) harmonic morphism, (a2) twistorial, (a3) the horizontal relation
/// with coefficient `coef`; the flag asserts two-of-three at every point.
pub fn thm44a_report_with(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance, coef: f64) -> Result<VerdictReport> {
    require_dims(map, 4, 3, "thm44a_report")?;
    let rows = per_point(points, |x| thm44a_at(&MapPoint::new(map, x)?, coef, tol))?;
    let mut flag = true;
    let mut s: Vec<Series> = vec![Series::default(); 4];
    for r in &rows {
        for i in 0..4 {
            s[i].push(r[i].0, r[i].1);
        }
        let a1 = tol.accepts(r[0].0, r[0].1) && tol.accepts(r[1].0, r[1].1);
        let a2 = tol.accepts(r[2].0, r[2].1);
        let a3 = tol.accepts(r[3].0, r[3].1);
        flag &= [a1, a2, a3].iter().filter(|b| **b).count() != 2;
    }
    let mut hm = Series::default();
    for r in &rows {
        hm.push(r[0].0.max(r[1].0), r[0].1.max(r[1].1));
    }
    let mut rep = VerdictReport::new("thm44a", points.len(), 0)
        .with_measure("harmonic_morphism", &hm, tol)
        .with_measure("twistorial", &s[2], tol)
        .with_measure("eq41", &s[3], tol)
        .with_flag("two_of_three", flag)
        .with_value("eq41_coefficient", coef);
    rep.verdict = Verdict::from_bool(flag);
    rep.max_residual = s[3].max_residual();
    Ok(rep)
}

pub fn thm44a_report(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    thm44a_report_with(map, points, tol, EQ41_COEFFICIENT)
}

/// `k = 2(α_M − α_D)(U)` and the horizontal residual `|2(α_M − α_D)|ℋ − *_ℋI^ℋ|`.
pub fn k_at(shape: &ShapeAt) -> Result<(f64, f64, f64)> {
    let d = dpm_forms(shape)?;
    let diff = (shape.alpha() - &d.minimal) * 2.0;
    let k = diff.dot(&shape.split.v(0));
    let h = shape.split.proj_h.transpose() * &diff;
    let scale = diff.abs().max() + d.star_i.abs().max();
    Ok((k, (h - &d.star_i).abs().max(), scale))
}

/// KSection values with Eq. 4.2 horizontal consistency and basic-ness.
pub fn extract_k(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    require_dims(map, 4, 3, "extract_k")?;
    let rows = per_point(points, |x| {
        let shape = ShapeAt::from_map(map, x)?;
        let (k, res, scale) = k_at(&shape)?;
        let u = shape.split.v(0);
        let dk = richardson(
            |y: &Vector| {
                let p: Vec<f64> = y.iter().copied().collect();
                Ok::<_, crate::Error>(Vector::from_element(1, k_at(&ShapeAt::from_map(map, &p)?)?.0))
            },
            &Vector::from_column_slice(x),
            &u,
            1e-3,
        )?[0];
        let basic = (dk - shape.alpha().dot(&u) * k).abs();
        Ok((k, res, scale, basic))
    })?;
    let mut h = Series::default();
    let mut b = Series::default();
    let mut kmax = 0.0_f64;
    for &(k, res, scale, basic) in &rows {
        h.push(res, scale);
        b.push(basic, k.abs());
        kmax = kmax.max(k.abs());
    }
    Ok(VerdictReport::from_series("extract-k", points.len(), 0, &h, tol)
        .with_measure("k_basic", &b, Tolerance::new(tol.rel.max(1e-6)))
        .with_value("max_abs_k", kmax))
}

/// Trace-free part of a symmetric bilinear form restricted to the horizontal frame.
fn horizontal_tracefree(sym: &Mat, split: &crate::geometry::Split) -> Mat {
    let s = split.horizontal.transpose() * sym * &split.horizontal;
    let n = s.nrows();
    &s - Mat::identity(n, n) * (s.trace() / n as f64)
}

fn sym(m: &Mat) -> Mat {
    (m + m.transpose()) * 0.5
}

/// Horizontal trace-free Ricci residual for the fibres of a map.
pub fn ricci_horizontal_at(map: &MapSpec, x: &[f64]) -> Result<(f64, f64)> {
    let shape = ShapeAt::from_map(map, x)?;
    let c = curvature_at(map.domain(), x)?;
    let tf = horizontal_tracefree(&sym(&c.ricci), &shape.split);
    Ok((tf.abs().max(), c.ricci.abs().max()))
}

/// Horizontal trace-free Ricci verdict; for m = 3 also the agreement flag
/// with the geodesic-fibre and harmonic-morphism verdicts.
pub fn ricci_horizontal_tracefree(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    if !(3..=4).contains(&map.m()) {
        return Err(dim_error("ricci_horizontal_tracefree", "needs m ∈ {3, 4}"));
    }
    let rows = per_point(points, |x| ricci_horizontal_at(map, x))?;
    let s = series_of(&rows);
    let mut rep = VerdictReport::from_series("ricci-horizontal", points.len(), 0, &s, tol);
    if map.m() == 3 && map.n() == 2 {
        let tw = twistorial_3to2(map, points, tol)?;
        let hm = crate::morphism::harmonic_morphism_verdict(map, points, tol)?;
        let agree = rep.passed() == tw.passed() && tw.passed() == hm.passed();
        rep = rep.with_flag("three_way_agreement", agree);
    }
    Ok(rep)
}

/// `Sym(Ric^M − φ*Ric^N)` at a point.
fn ricci_difference(mp: &MapPoint, map: &MapSpec) -> Result<(Mat, f64)> {
    let x = mp.point();
    let cm = curvature_at(map.domain(), &x)?;
    let y: Vec<f64> = mp.jets().phi.iter().copied().collect();
    let cn: CurvatureAtPoint = curvature_at(map.codomain(), &y)?;
    let pulled = mp.dphi().transpose() * sym(&cn.ricci) * mp.dphi();
    Ok((sym(&cm.ricci) - &pulled, cm.ricci.abs().max() + pulled.abs().max()))
}

/// Twistoriality for either orientation at a point.
fn twistorial_either_at(map: &MapSpec, x: &[f64], tol: Tolerance) -> Result<bool> {
    let rev = flipped(map);
    if map.n() == 3 {
        let a = twistorial_4to3_at(&MapPoint::new(map, x)?, tol)?;
        let b = twistorial_4to3_at(&MapPoint::new(&rev, x)?, tol)?;
        Ok(tol.accepts(a.0, a.1) || tol.accepts(b.0, b.1))
    } else {
        let fd = Tolerance::new(tol.rel.max(1e-6));
        let a = nijenhuis_norm(&induced_j_jet(map, x)?);
        let b = nijenhuis_norm(&induced_j_jet(&rev, x)?);
        Ok(fd.accepts(a.0, a.1) || fd.accepts(b.0, b.1))
    }
}

/// Horizontal trace-free part of `Ric^M − φ*Ric^N`, with the agreement flag
/// against twistoriality (for some orientation).
pub fn prop56_report(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    if map.m() != 4 || !(2..=3).contains(&map.n()) {
        return Err(dim_error("prop56_report", "needs m = 4 and n ∈ {2, 3}"));
    }
    let hm = crate::morphism::harmonic_morphism_verdict(map, points, tol)?;
    if !hm.passed() {
        return Err(crate::Error::Precondition("the Ricci comparison needs a harmonic morphism".into()));
    }
    let rows = per_point(points, |x| {
        let mp = MapPoint::new(map, x)?;
        let (d, scale) = ricci_difference(&mp, map)?;
        let tf = horizontal_tracefree(&d, &mp.shape.split);
        Ok(((tf.abs().max(), scale), twistorial_either_at(map, x, tol)?))
    })?;
    let s = series_of(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
    let tw = rows.iter().all(|r| r.1);
    let verdict = s.verdict(tol).passed();
    let mut rep = VerdictReport::from_series("prop56", points.len(), 0, &s, tol)
        .with_value("twistorial", f64::from(u8::from(tw)));
    rep = rep.with_flag("agrees_with_twistoriality", verdict == tw);
    Ok(rep)
}

/// `Ric^M(Y,Y) − Ric^N(dφY, dφY) + ½A₊(Y)A₋(Y)` over horizontal null Y.
pub fn lemma55_at(map: &MapSpec, mp: &MapPoint, tol: Tolerance) -> Result<(f64, f64)> {
    let (d, scale) = ricci_difference(mp, map)?;
    let (ap, am) = a_pm(mp, tol)?;
    let frame = mp.shape.split.frame();
    let k = mp.shape.split.k();
    let dc: Vec<Vec<Complex64>> = (0..4).map(|i| (0..4).map(|j| Complex64::new(d[(i, j)], 0.0)).collect()).collect();
    let mut worst = 0.0_f64;
    let mut aterm = 0.0_f64;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let (y, _) = null_pair(&frame, mp.g(), k + a, k + b)?;
        let ric: Complex64 = (0..4).map(|i| (0..4).map(|j| dc[i][j] * y[i] * y[j]).sum::<Complex64>()).sum();
        let apy: Complex64 = (0..4).map(|i| y[i] * ap[i]).sum();
        let amy: Complex64 = (0..4).map(|i| y[i] * am[i]).sum();
        let total = ric + apy * amy * 0.5;
        worst = worst.max(total.norm());
        aterm = aterm.max((apy * amy).norm());
        debug_assert!(complex_inner(mp.g(), &y, &y).norm() < 1e-10);
    }
    Ok((worst, scale + aterm))
}

pub fn lemma55_check(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    require_dims(map, 4, 3, "lemma55_residual")?;
    let hm = crate::morphism::harmonic_morphism_verdict(map, points, tol)?;
    if !hm.passed() {
        return Err(crate::Error::Precondition("the null identity needs a harmonic morphism".into()));
    }
    let rows = per_point(points, |x| lemma55_at(map, &MapPoint::new(map, x)?, tol))?;
    let s = series_of(&rows);
    Ok(VerdictReport::from_series("lemma55", points.len(), 0, &s, Tolerance::new(tol.rel.min(1e-7))))
}
