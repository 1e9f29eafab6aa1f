//! Harmonic maps and morphisms between Weyl spaces: tension fields,
//! horizontal weak conformality, the chain rule, the fundamental equation and
//! the basic-connection criteria.

use crate::connection::{partial_lee_difference, ConnectionCoeffs, PartialAction, PartialConnectionForm};
use crate::error::{dim_error, Error, Result};
use crate::expr::Expression;
use crate::geometry::{MapJets, MapSpec, WeylJet};
use crate::linalg::{richardson, Mat, Vector};
use crate::parallel::per_point;
use crate::report::{Series, Tolerance, VerdictReport};
use crate::shape::ShapeAt;

/// Everything needed about a map at one domain point.
#[derive(Clone, Debug)]
pub struct MapPoint {
    pub shape: ShapeAt,
    pub codomain: WeylJet,
    pub n_lc: ConnectionCoeffs,
    pub n_weyl: ConnectionCoeffs,
}

impl MapPoint {
    pub fn new(map: &MapSpec, x: &[f64]) -> Result<Self> {
        let shape = ShapeAt::from_map(map, x)?;
        let phi: Vec<f64> = shape.map_jets().expect("map source").0.phi.iter().copied().collect();
        let codomain = map.codomain().jet_at(&phi)?;
        let n_lc = ConnectionCoeffs::levi_civita(&codomain.metric, false);
        let n_weyl = ConnectionCoeffs::weyl_from_alpha(&codomain.metric, &codomain.lee.alpha);
        Ok(MapPoint { shape, codomain, n_lc, n_weyl })
    }

    /// Replace both Lee form values, keeping everything else.
    pub fn with_lee_forms(&self, alpha_m: &Vector, alpha_n: &Vector) -> Self {
        let mut p = self.clone();
        p.shape = self.shape.with_alpha(alpha_m);
        p.codomain.lee.alpha = alpha_n.clone();
        p.n_weyl = ConnectionCoeffs::weyl_from_alpha(&p.codomain.metric, alpha_n);
        p
    }

    pub fn jets(&self) -> &MapJets {
        self.shape.map_jets().expect("map source").0
    }

    pub fn lift(&self) -> &Mat {
        self.shape.map_jets().expect("map source").1
    }

    pub fn dphi(&self) -> &Mat {
        &self.jets().dphi
    }

    pub fn m(&self) -> usize {
        self.dphi().ncols()
    }

    pub fn n(&self) -> usize {
        self.dphi().nrows()
    }

    pub fn g(&self) -> &Mat {
        self.shape.g()
    }

    pub fn g_inv(&self) -> &Mat {
        &self.shape.jet.metric.g_inv
    }

    pub fn g_n(&self) -> &Mat {
        &self.codomain.metric.g
    }

    pub fn alpha_m(&self) -> &Vector {
        self.shape.alpha()
    }

    pub fn alpha_n(&self) -> &Vector {
        &self.codomain.lee.alpha
    }

    /// `φ*α_N` as a covector on M.
    pub fn pullback_alpha_n(&self) -> Vector {
        self.dphi().transpose() * self.alpha_n()
    }

    /// Pushed co-metric `P = dφ g⁻¹ dφᵀ`.
    pub fn cometric(&self) -> Mat {
        self.dphi() * self.g_inv() * self.dphi().transpose()
    }

    /// Basic lift `Y_β = Q e_β` of codomain coordinate field β.
    pub fn basic_lift(&self, beta: usize) -> Vector {
        self.lift().column(beta).into_owned()
    }

    /// Derivative `∂_k dφ` (n×m).
    pub fn d_dphi(&self, k: usize) -> Mat {
        let j = self.jets();
        Mat::from_fn(self.n(), self.m(), |c, i| j.d2phi[c][(k, i)])
    }

    /// `∂_k P`.
    pub fn d_cometric(&self, k: usize) -> Mat {
        let h = self.d_dphi(k);
        let dphi = self.dphi();
        let ginv = self.g_inv();
        &h * ginv * dphi.transpose()
            + dphi * self.shape.jet.metric.d_inverse(k) * dphi.transpose()
            + dphi * ginv * h.transpose()
    }

    /// `∂_k Q` for the horizontal lift `Q = g⁻¹ dφᵀ P⁻¹`.
    pub fn d_lift(&self, k: usize) -> Result<Mat> {
        let p_inv = self
            .cometric()
            .try_inverse()
            .ok_or_else(|| Error::RankDeficient { point: self.point(), expected: self.n() })?;
        let dpinv = -(&p_inv * self.d_cometric(k) * &p_inv);
        let dphi = self.dphi();
        Ok(self.shape.jet.metric.d_inverse(k) * dphi.transpose() * &p_inv
            + self.g_inv() * self.d_dphi(k).transpose() * &p_inv
            + self.g_inv() * dphi.transpose() * dpinv)
    }

    pub fn point(&self) -> Vec<f64> {
        self.shape.split.point.iter().copied().collect()
    }
}

/// Hessian of a jet as a matrix.
pub fn hess_mat(j: &crate::Jet2<f64>) -> Mat {
    let m = j.dim();
    Mat::from_fn(m, m, |a, b| j.hess(a, b))
}

/// `(Ddφ)^γ_{ij}` for given domain and codomain connections.
pub fn map_hessian(mp: &MapPoint, dm: &ConnectionCoeffs, dn: &ConnectionCoeffs) -> Vec<Mat> {
    let (m, n) = (mp.m(), mp.n());
    let j = mp.jets();
    (0..n)
        .map(|c| {
            Mat::from_fn(m, m, |i, jj| {
                let mut v = j.d2phi[c][(i, jj)];
                for k in 0..m {
                    v -= dm.gamma.get(k, i, jj) * j.dphi[(c, k)];
                }
                for a in 0..n {
                    for b in 0..n {
                        v += dn.gamma.get(c, a, b) * j.dphi[(a, i)] * j.dphi[(b, jj)];
                    }
                }
                v
            })
        })
        .collect()
}

/// Tension `τ = trace_g(Ddφ)` and a magnitude scale for its terms.
pub fn tension_with(mp: &MapPoint, dm: &ConnectionCoeffs, dn: &ConnectionCoeffs) -> (Vector, f64) {
    let n = mp.n();
    let ginv = mp.g_inv();
    let j = mp.jets();
    let second = Vector::from_iterator(n, (0..n).map(|c| ginv.component_mul(&j.d2phi[c]).sum()));
    let dom = mp.dphi() * dm.trace(ginv);
    let p = mp.cometric();
    let cod = Vector::from_iterator(
        n,
        (0..n).map(|c| {
            let mut s = 0.0;
            for a in 0..n {
                for b in 0..n {
                    s += dn.gamma.get(c, a, b) * p[(a, b)];
                }
            }
            s
        }),
    );
    let scale = second.abs().max().max(dom.abs().max()).max(cod.abs().max());
    (second - dom + cod, scale)
}

/// Tension field of φ with respect to the Weyl connections of both sides.
pub fn tension_field(mp: &MapPoint) -> Vector {
    tension_with(mp, &mp.shape.weyl, &mp.n_weyl).0
}

/// Square dilation and the conformality residual at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareDilation {
    pub lambda_sq: f64,
    pub residual: f64,
}

pub fn hwc_at(mp: &MapPoint) -> SquareDilation {
    let p = mp.cometric();
    let n = mp.n() as f64;
    let lambda_sq = (&p * mp.g_n()).trace() / n;
    let residual = (&p - &mp.codomain.metric.g_inv * lambda_sq).abs().max();
    SquareDilation { lambda_sq, residual }
}

/// `d ln λ = ½ d ln Λ`, as a covector on M.
pub fn dln_lambda(mp: &MapPoint) -> Vector {
    let m = mp.m();
    let n = mp.n();
    let p = mp.cometric();
    let g_n = mp.g_n();
    let lam = (&p * g_n).trace() / n as f64;
    let dphi = mp.dphi();
    Vector::from_iterator(
        m,
        (0..m).map(|k| {
            let mut dgn = Mat::zeros(n, n);
            for c in 0..n {
                dgn += &mp.codomain.metric.dg[c] * dphi[(c, k)];
            }
            let dl = (mp.d_cometric(k) * g_n + &p * dgn).trace() / n as f64;
            0.5 * dl / lam
        }),
    )
}

/// Fails unless φ is horizontally conformal at the point.
pub fn require_hwc(mp: &MapPoint, tol: Tolerance) -> Result<SquareDilation> {
    let h = hwc_at(mp);
    if tol.accepts(h.residual, h.lambda_sq) && h.lambda_sq > 0.0 {
        Ok(h)
    } else {
        Err(Error::NotHorizontallyConformal { point: mp.point(), residual: h.residual })
    }
}

/// Build the map context at every point.
fn map_points(map: &MapSpec, points: &[Vec<f64>]) -> Result<Vec<MapPoint>> {
    per_point(points, |x| MapPoint::new(map, x))
}

/// Residual series for tension and conformality.
fn hm_series(mps: &[MapPoint]) -> (Series, Series) {
    let mut tension = Series::default();
    let mut hwc = Series::default();
    for mp in mps {
        let (tau, scale) = tension_with(mp, &mp.shape.weyl, &mp.n_weyl);
        tension.push(tau.abs().max(), scale);
        let h = hwc_at(mp);
        hwc.push(h.residual, h.lambda_sq);
    }
    (tension, hwc)
}

pub fn harmonic_check(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let (t, _) = hm_series(&map_points(map, points)?);
    Ok(VerdictReport::from_series("harmonic", points.len(), 0, &t, tol))
}

pub fn hwc_check(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let mps = map_points(map, points)?;
    let (_, h) = hm_series(&mps);
    let lam = mps.iter().map(|mp| hwc_at(mp).lambda_sq).fold(0.0_f64, f64::max);
    Ok(VerdictReport::from_series("hwc", points.len(), 0, &h, tol).with_value("max_square_dilation", lam))
}

/// Harmonic and horizontally weakly conformal at every point.
pub fn harmonic_morphism_verdict(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let (t, h) = hm_series(&map_points(map, points)?);
    let mut r = VerdictReport::new("morphism", points.len(), 0)
        .with_measure("tension", &t, tol)
        .with_measure("hwc", &h, tol);
    r.max_residual = t.max_residual().max(h.max_residual());
    r.scale = t.max_scale().max(h.max_scale());
    r.verdict = crate::report::Verdict::from_bool(t.verdict(tol).passed() && h.verdict(tol).passed());
    Ok(r)
}

/// `|trace(Dd(f∘φ)) − df(τ) − ⟨Ddf, P⟩|` with the Weyl connections of both
/// sides; `f` is given in codomain coordinates.
pub fn chain_rule_residual(map: &MapSpec, mp: &MapPoint, f: &Expression) -> Result<(f64, f64)> {
    let x = mp.point();
    let composite = f.substitute(map.components());
    let cj = composite.eval_jet2::<f64>(&x)?;
    let m = mp.m();
    let grad = Vector::from_iterator(m, (0..m).map(|i| cj.grad(i)));
    let lhs = mp.shape.weyl.trace_hessian(mp.g_inv(), &grad, &hess_mat(&cj));
    let y: Vec<f64> = mp.jets().phi.iter().copied().collect();
    let fj = f.eval_jet2::<f64>(&y)?;
    let n = mp.n();
    let df = Vector::from_iterator(n, (0..n).map(|a| fj.grad(a)));
    let (tau, tscale) = tension_with(mp, &mp.shape.weyl, &mp.n_weyl);
    let ddf = hess_mat(&fj) - Mat::from_fn(n, n, |a, b| (0..n).map(|c| mp.n_weyl.gamma.get(c, a, b) * df[c]).sum());
    let p = mp.cometric();
    let rhs = df.dot(&tau) + ddf.component_mul(&p).sum();
    let scale = lhs.abs() + df.abs().max() * (tscale + tau.abs().max()) + ddf.abs().max() * p.abs().max();
    Ok(((lhs - rhs).abs(), scale))
}

/// Horizontal part of a covector, as a covector.
fn on_h(mp: &MapPoint, covector: &Vector) -> Vector {
    mp.shape.split.proj_h.transpose() * covector
}

/// `trace_g(B^{𝒱,D})♭ − trace_g(B^𝒱)♭ + (m−n) α_M|ℋ`.
pub fn trace_b_residual(shape: &ShapeAt) -> (f64, f64) {
    let g = shape.g();
    let k = shape.split.k() as f64;
    let with_d = g * shape.trace_b_vertical(&shape.weyl);
    let lc = g * shape.trace_b_vertical(&shape.lc);
    let a = shape.split.proj_h.transpose() * shape.alpha() * k;
    let scale = with_d.abs().max().max(lc.abs().max()).max(a.abs().max());
    ((with_d - lc + a).abs().max(), scale)
}

/// Both sides of the fundamental equation on ℋ, as covectors:
/// `τ♭ = (m−2)α_M − (n−2)(φ*α_N + d ln λ) − trace_g(B^𝒱)♭`.
pub fn fundamental_equation_sides(mp: &MapPoint, tol: Tolerance) -> Result<(Vector, Vector)> {
    require_hwc(mp, tol)?;
    let (m, n) = (mp.m() as f64, mp.n() as f64);
    let tau = tension_field(mp);
    let lift_tau = mp.lift() * &tau;
    // g_M(Qτ, X) = g_N(τ, dφX)/Λ for horizontal X.
    let lhs = on_h(mp, &(mp.g() * lift_tau));
    let tb = mp.g() * mp.shape.trace_b_vertical(&mp.shape.lc);
    let rhs = on_h(
        mp,
        &(mp.alpha_m() * (m - 2.0) - (mp.pullback_alpha_n() + dln_lambda(mp)) * (n - 2.0) - tb),
    );
    Ok((lhs, rhs))
}

pub fn fundamental_equation_residual(mp: &MapPoint, tol: Tolerance) -> Result<(f64, f64)> {
    let (l, r) = fundamental_equation_sides(mp, tol)?;
    let scale = l.abs().max().max(r.abs().max());
    Ok(((l - r).abs().max(), scale))
}

/// Action of `ℋD` on basic lifts, for a domain connection `d`.
pub fn horizontal_action(mp: &MapPoint, d: &ConnectionCoeffs) -> Result<PartialAction> {
    let (m, n) = (mp.m(), mp.n());
    let dq: Vec<Mat> = (0..m).map(|k| mp.d_lift(k)).collect::<Result<_>>()?;
    let split = &mp.shape.split;
    let columns = (0..split.n())
        .map(|a| {
            let e = split.h(a);
            let mut out = Mat::zeros(m, n);
            for b in 0..n {
                let y = mp.basic_lift(b);
                let mut v = d.apply(&e, &y);
                for k in 0..m {
                    v += dq[k].column(b) * e[k];
                }
                out.set_column(b, &(&split.proj_h * v));
            }
            out
        })
        .collect();
    Ok(PartialAction { columns })
}

/// Lift of `D^N_{dφX} e_β` for the codomain Weyl connection (or any given
/// codomain connection `dn`).
pub fn pullback_action_with(mp: &MapPoint, dn: &ConnectionCoeffs, tol: Tolerance) -> Result<PartialAction> {
    require_hwc(mp, tol)?;
    let n = mp.n();
    let split = &mp.shape.split;
    let columns = (0..split.n())
        .map(|a| {
            let c = mp.dphi() * split.h(a);
            let mut out = Mat::zeros(mp.m(), n);
            for b in 0..n {
                let mut e = Vector::zeros(n);
                e[b] = 1.0;
                out.set_column(b, &(mp.lift() * dn.apply(&c, &e)));
            }
            out
        })
        .collect();
    Ok(PartialAction { columns })
}

pub fn pullback_partial_connection(mp: &MapPoint, tol: Tolerance) -> Result<PartialAction> {
    pullback_action_with(mp, &mp.n_weyl, tol)
}

/// Lee form of the pullback of `D^N` relative to `ℋD^M`.
pub fn pullback_vs_horizontal(mp: &MapPoint, tol: Tolerance) -> Result<PartialConnectionForm> {
    let pull = pullback_partial_connection(mp, tol)?;
    let hd = horizontal_action(mp, &mp.shape.weyl)?;
    partial_lee_difference(&pull, &hd, &mp.shape.split, mp.g(), mp.dphi())
}

/// The three conditions of the two-of-three theorem at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Theorem23Point {
    pub tension: (f64, f64),
    pub hwc: (f64, f64),
    pub minimal: (f64, f64),
    pub connection: (f64, f64),
}

pub fn theorem23_at(mp: &MapPoint, tol: Tolerance) -> Result<Theorem23Point> {
    let (tau, ts) = tension_with(mp, &mp.shape.weyl, &mp.n_weyl);
    let h = hwc_at(mp);
    let tb = mp.g() * mp.shape.trace_b_vertical(&mp.shape.weyl);
    let tb_scale = (mp.g() * mp.shape.trace_b_vertical(&mp.shape.lc)).abs().max() + mp.alpha_m().abs().max();
    let connection = if tol.accepts(h.residual, h.lambda_sq) {
        let lam = pullback_vs_horizontal(mp, tol)?;
        let scale = mp.alpha_m().abs().max() + mp.pullback_alpha_n().abs().max() + dln_lambda(mp).abs().max();
        (lam.values.abs().max(), scale)
    } else {
        (f64::INFINITY, 0.0)
    };
    Ok(Theorem23Point {
        tension: (tau.abs().max(), ts),
        hwc: (h.residual, h.lambda_sq),
        minimal: (tb.abs().max(), tb_scale),
        connection,
    })
}

/// Verdicts for (i) harmonic morphism, (ii) minimal fibres with respect to
/// `D^M`, (iii) `ℋD^M` equal to the pullback of `D^N`, and a flag asserting
/// the two-of-three logic at every point (for n = 2: (i) ⟺ (ii)).
pub fn theorem23_report(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let n = map.n();
    let rows = per_point(points, |x| theorem23_at(&MapPoint::new(map, x)?, tol))?;
    let (mut hm, mut min, mut conn) = (Series::default(), Series::default(), Series::default());
    let mut flag = true;
    for r in &rows {
        let t_ok = tol.accepts(r.tension.0, r.tension.1);
        let h_ok = tol.accepts(r.hwc.0, r.hwc.1);
        let i = t_ok && h_ok;
        let ii = tol.accepts(r.minimal.0, r.minimal.1);
        let iii = tol.accepts(r.connection.0, r.connection.1);
        flag &= if n == 2 { i == ii } else { [i, ii, iii].iter().filter(|b| **b).count() != 2 };
        let hm_res = if i { 0.0 } else { r.tension.0.max(r.hwc.0) };
        hm.push(hm_res, r.tension.1.max(r.hwc.1));
        min.push(r.minimal.0, r.minimal.1);
        conn.push(r.connection.0, r.connection.1);
    }
    let mut rep = VerdictReport::new("theorem23", points.len(), 0)
        .with_measure("harmonic_morphism", &hm, tol)
        .with_measure("minimal_fibres", &min, tol);
    if n != 2 {
        rep = rep.with_measure("connection", &conn, tol);
    }
    rep = rep.with_flag("two_of_three", flag);
    rep.verdict = crate::report::Verdict::from_bool(flag);
    rep.max_residual = hm.max_residual().max(min.max_residual());
    Ok(rep)
}

/// The codomain Lee form forced by the fundamental equation, evaluated on
/// the codomain coordinate fields: `[(m−2)α_M − trace_g(B^𝒱)♭]/(n−2) − d ln λ`
/// applied to basic lifts.
pub fn codomain_lee_candidate(mp: &MapPoint, tol: Tolerance) -> Result<Vector> {
    require_hwc(mp, tol)?;
    let (m, n) = (mp.m() as f64, mp.n());
    if n == 2 {
        return Err(dim_error("codomain_lee_candidate", "undefined for n = 2"));
    }
    let tb = mp.g() * mp.shape.trace_b_vertical(&mp.shape.lc);
    let form = (mp.alpha_m() * (m - 2.0) - tb) / (n as f64 - 2.0) - dln_lambda(mp);
    Ok(Vector::from_iterator(n, (0..n).map(|b| form.dot(&mp.basic_lift(b)))))
}

/// Codomain Lee form forced by the domain data, its vertical variation and
/// its distance from the declared codomain Lee form. For n = 2 the verdict
/// is fibre minimality with respect to `D^M` instead.
pub fn required_codomain_lee(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    if map.n() == 2 {
        let mps = map_points(map, points)?;
        let mut s = Series::default();
        for mp in &mps {
            let (r, sc) = {
                let tb = mp.g() * mp.shape.trace_b_vertical(&mp.shape.weyl);
                (tb.abs().max(), mp.alpha_m().abs().max())
            };
            s.push(r, sc);
        }
        return Ok(VerdictReport::from_series("codomain-lee", points.len(), 0, &s, tol).with_value("minimal_fibres_path", 1.0));
    }
    let rows = per_point(points, |x| {
        let mp = MapPoint::new(map, x)?;
        let cand = codomain_lee_candidate(&mp, tol)?;
        let xv = Vector::from_column_slice(x);
        let mut basic = 0.0_f64;
        for a in 0..mp.shape.split.k() {
            let u = mp.shape.split.v(a);
            let d = richardson(
                |y: &Vector| {
                    let p: Vec<f64> = y.iter().copied().collect();
                    codomain_lee_candidate(&MapPoint::new(map, &p)?, tol)
                },
                &xv,
                &u,
                1e-3,
            )?;
            basic = basic.max(d.abs().max());
        }
        let declared = (&cand - mp.alpha_n()).abs().max();
        Ok((basic, declared, cand.abs().max()))
    })?;
    let mut basic = Series::default();
    let mut declared = Series::default();
    for (b, d, s) in rows {
        basic.push(b, s);
        declared.push(d, s);
    }
    let b_tol = Tolerance::new(tol.rel.max(1e-6));
    Ok(VerdictReport::from_series("codomain-lee", points.len(), 0, &basic, b_tol)
        .with_measure("basic", &basic, b_tol)
        .with_measure("matches_declared", &declared, tol))
}

/// Codomain harmonic polynomials used for the pullback test.
pub fn harmonic_polynomials(n: usize) -> Vec<&'static str> {
    match n {
        1 => vec!["y1"],
        _ => vec!["y1", "y2", "y1^2 - y2^2", "y1*y2", "y1^3 - 3*y1*y2^2"],
    }
}

/// Pullbacks of harmonic polynomials through φ are harmonic on `(M, D^M)`.
pub fn fuglede_ishihara(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let chart = map.codomain().chart();
    let n = map.n();
    let names: Vec<String> = chart.coords().iter().cloned().collect();
    let polys: Vec<Expression> = harmonic_polynomials(n)
        .iter()
        .map(|p| {
            let mut t = p.to_string();
            for (i, name) in names.iter().enumerate().rev() {
                t = t.replace(&format!("y{}", i + 1), name);
            }
            chart.parse(&t)
        })
        .collect::<Result<_>>()?;
    let pulled: Vec<Expression> = polys.iter().map(|f| f.substitute(map.components())).collect();
    let rows = per_point(points, |x| {
        let mp = MapPoint::new(map, x)?;
        let mut worst = (0.0_f64, 0.0_f64);
        for f in &pulled {
            let j = f.eval_jet2::<f64>(x)?;
            let grad = Vector::from_iterator(mp.m(), (0..mp.m()).map(|i| j.grad(i)));
            let hess = hess_mat(&j);
            let lap = mp.shape.weyl.trace_hessian(mp.g_inv(), &grad, &hess);
            worst.0 = worst.0.max(lap.abs());
            worst.1 = worst.1.max(hess.abs().max() + grad.abs().max());
        }
        Ok(worst)
    })?;
    let mut s = Series::default();
    for (r, sc) in rows {
        s.push(r, sc);
    }
    Ok(VerdictReport::from_series("fuglede", points.len(), 0, &s, tol))
}

/// Chain-rule identity residuals for a fixed family of codomain test functions.
pub fn chain_rule_check(map: &MapSpec, points: &[Vec<f64>], tol: Tolerance) -> Result<VerdictReport> {
    let chart = map.codomain().chart();
    let names = chart.coords();
    let n = names.len();
    let mut tests = Vec::new();
    for (i, a) in names.iter().enumerate() {
        let b = &names[(i + 1) % n];
        tests.push(format!("{a}^3 - 2*{a}*{b} + 0.5*{b}^2"));
        tests.push(format!("sin({a}) * {b} + 0.3*{a}^2"));
    }
    let fs: Vec<Expression> = tests.iter().map(|t| chart.parse(t)).collect::<Result<_>>()?;
    let rows = per_point(points, |x| {
        let mp = MapPoint::new(map, x)?;
        let mut worst = (0.0_f64, 0.0_f64);
        for f in &fs {
            let (r, s) = chain_rule_residual(map, &mp, f)?;
            worst = (worst.0.max(r), worst.1.max(s));
        }
        Ok(worst)
    })?;
    let mut s = Series::default();
    for (r, sc) in rows {
        s.push(r, sc);
    }
    Ok(VerdictReport::from_series("chain", points.len(), 0, &s, Tolerance::new(1e-8)).with_value("tol_used", tol.rel.min(1e-8)))
}

/// Integrability tensor `I^ℋ(X, Y) = −𝒱[X, Y]`.
pub fn integrability_tensor(mp: &MapPoint, x: &Vector, y: &Vector) -> Vector {
    mp.shape.integrability(x, y)
}

/// Second fundamental form `B^{𝒱,D}(U, V)`.
pub fn second_fundamental_form(shape: &ShapeAt, d: &ConnectionCoeffs, u: &Vector, v: &Vector) -> Vector {
    shape.b_vertical(d, u, v)
}
