//! Levi-Civita and Weyl connections, equal-trace and minimal Weyl
//! connections, and Lee-form comparison of partial connections over ℋ.

use crate::error::{Error, Result};
use crate::geometry::{LeeJet, MetricJet, Split, WeylStructure};
use crate::linalg::{eye, inner, Mat, Tensor3, Tensor4, Vector};
use crate::shape::ShapeAt;
use crate::Jet2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Christoffel symbols `gamma.get(k, i, j) = Γ^k_{ij}` and optionally their
/// derivatives `dgamma.get(p, k, i, j) = ∂_p Γ^k_{ij}`.
#[derive(Clone, Debug)]
pub struct ConnectionCoeffs {
    pub gamma: Tensor3,
    pub dgamma: Option<Tensor4>,
}

impl ConnectionCoeffs {
    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn zero(m: usize) -> Self {
        ConnectionCoeffs { gamma: Tensor3::zeros(m), dgamma: Some(Tensor4::zeros(m)) }
    }

    /// Levi-Civita connection of the metric jet.
    pub fn levi_civita(metric: &MetricJet, with_derivatives: bool) -> Self {
        let m = metric.dim();
        // t[l][i][j] = ½(∂_i g_lj + ∂_j g_li − ∂_l g_ij)
        let lowered = |dg: &[Mat]| {
            let mut t = Tensor3::zeros(m);
            for l in 0..m {
                for i in 0..m {
                    for j in i..m {
                        let v = 0.5 * (dg[i][(l, j)] + dg[j][(l, i)] - dg[l][(i, j)]);
                        t.set(l, i, j, v);
                        t.set(l, j, i, v);
                    }
                }
            }
            t
        };
        let t = lowered(&metric.dg);
        let raise = |inv: &Mat, t: &Tensor3, out: &mut Tensor3, add: bool| {
            for k in 0..m {
                for i in 0..m {
                    for j in i..m {
                        let v: f64 = (0..m).map(|l| inv[(k, l)] * t.get(l, i, j)).sum();
                        let v = if add { out.get(k, i, j) + v } else { v };
                        out.set(k, i, j, v);
                        out.set(k, j, i, v);
                    }
                }
            }
        };
        let mut gamma = Tensor3::zeros(m);
        raise(&metric.g_inv, &t, &mut gamma, false);
        let dgamma = with_derivatives.then(|| {
            let mut dg4 = Tensor4::zeros(m);
            for p in 0..m {
                let dt = lowered(&metric.d2g[p]);
                let dinv = metric.d_inverse(p);
                let mut slice = Tensor3::zeros(m);
                raise(&dinv, &t, &mut slice, false);
                raise(&metric.g_inv, &dt, &mut slice, true);
                for k in 0..m {
                    for i in 0..m {
                        for j in 0..m {
                            dg4.set(p, k, i, j, slice.get(k, i, j));
                        }
                    }
                }
            }
            dg4
        });
        ConnectionCoeffs { gamma, dgamma }
    }

    /// Weyl connection `D = ∇^g + α⊗Id + Id⊗α − g·α♯`.
    pub fn weyl(metric: &MetricJet, lee: &LeeJet, with_derivatives: bool) -> Self {
        let mut c = Self::levi_civita(metric, with_derivatives);
        let m = metric.dim();
        let alpha = &lee.alpha;
        let a_up = &metric.g_inv * alpha;
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut v = -metric.g[(i, j)] * a_up[k];
                    if k == i {
                        v += alpha[j];
                    }
                    if k == j {
                        v += alpha[i];
                    }
                    c.gamma.add(k, i, j, v);
                }
            }
        }
        if let Some(dg4) = c.dgamma.as_mut() {
            for p in 0..m {
                let dinv = metric.d_inverse(p);
                let da = lee.dalpha.row(p).transpose();
                let da_up = &dinv * alpha + &metric.g_inv * &da;
                for k in 0..m {
                    for i in 0..m {
                        for j in 0..m {
                            let mut v = -metric.dg[p][(i, j)] * a_up[k] - metric.g[(i, j)] * da_up[k];
                            if k == i {
                                v += da[j];
                            }
                            if k == j {
                                v += da[i];
                            }
                            dg4.set(p, k, i, j, dg4.get(p, k, i, j) + v);
                        }
                    }
                }
            }
        }
        c
    }

    /// Weyl connection from a Lee-form value only (no derivatives).
    pub fn weyl_from_alpha(metric: &MetricJet, alpha: &Vector) -> Self {
        let m = metric.dim();
        let lee = LeeJet { alpha: alpha.clone(), dalpha: Mat::zeros(m, m) };
        let mut c = Self::weyl(metric, &lee, false);
        c.dgamma = None;
        c
    }

    /// `Γ(u, v)^k = Γ^k_{ij} u^i v^j`.
    pub fn apply(&self, u: &Vector, v: &Vector) -> Vector {
        let m = self.dim();
        Vector::from_iterator(
            m,
            (0..m).map(|k| {
                let mut s = 0.0;
                for i in 0..m {
                    if u[i] == 0.0 {
                        continue;
                    }
                    for j in 0..m {
                        s += self.gamma.get(k, i, j) * u[i] * v[j];
                    }
                }
                s
            }),
        )
    }

    /// `g^{ij} Γ^k_{ij}`.
    pub fn trace(&self, g_inv: &Mat) -> Vector {
        let m = self.dim();
        Vector::from_iterator(
            m,
            (0..m).map(|k| {
                let mut s = 0.0;
                for i in 0..m {
                    for j in 0..m {
                        s += g_inv[(i, j)] * self.gamma.get(k, i, j);
                    }
                }
                s
            }),
        )
    }

    /// `max |Γ^k_{ij} − Γ^k_{ji}|`.
    pub fn torsion(&self) -> f64 {
        let m = self.dim();
        let mut t = 0.0_f64;
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    t = t.max((self.gamma.get(k, i, j) - self.gamma.get(k, j, i)).abs());
                }
            }
        }
        t
    }

    /// `max |(D_k g)_{ij} + 2 α_k g_{ij}|`.
    pub fn compatibility_residual(&self, metric: &MetricJet, alpha: &Vector) -> f64 {
        let m = self.dim();
        let g = &metric.g;
        let mut r = 0.0_f64;
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut d = metric.dg[k][(i, j)];
                    for l in 0..m {
                        d -= self.gamma.get(l, k, i) * g[(l, j)] + self.gamma.get(l, k, j) * g[(i, l)];
                    }
                    r = r.max((d + 2.0 * alpha[k] * g[(i, j)]).abs());
                }
            }
        }
        r
    }

    /// Covariant Laplacian-type trace `g^{ij}(∂_ij f − Γ^k_{ij} ∂_k f)` of a
    /// function with gradient `grad` and Hessian `hess`.
    pub fn trace_hessian(&self, g_inv: &Mat, grad: &Vector, hess: &Mat) -> f64 {
        let t = self.trace(g_inv);
        (g_inv.component_mul(hess)).sum() - t.dot(grad)
    }
}

/// Levi-Civita coefficients of `w` at `x`.
pub fn christoffel(w: &WeylStructure, x: &[f64], with_derivatives: bool) -> Result<ConnectionCoeffs> {
    Ok(ConnectionCoeffs::levi_civita(&w.metric_at(x)?, with_derivatives))
}

/// Weyl connection coefficients of `w` at `x`.
pub fn weyl_connection(w: &WeylStructure, x: &[f64], with_derivatives: bool) -> Result<ConnectionCoeffs> {
    let j = w.jet_at(x)?;
    Ok(ConnectionCoeffs::weyl(&j.metric, &j.lee, with_derivatives))
}

/// Residual of `α(X) = g(trace_g(∇^g − D), X)/(m−2)` over coordinate X.
pub fn lee_trace_residual(metric: &MetricJet, d: &ConnectionCoeffs, alpha: &Vector) -> Result<f64> {
    let recovered = equal_trace_weyl(d, metric)?;
    Ok((recovered - alpha).abs().max())
}

/// Lee form of the Weyl connection with the same trace on Hessians as the
/// torsion-free connection `d_any`.
pub fn equal_trace_weyl(d_any: &ConnectionCoeffs, metric: &MetricJet) -> Result<Vector> {
    let m = metric.dim();
    if m == 2 {
        return Err(Error::Dimension { op: "equal_trace_weyl", detail: "undefined in dimension 2".into() });
    }
    let lc = ConnectionCoeffs::levi_civita(metric, false);
    let t = lc.trace(&metric.g_inv) - d_any.trace(&metric.g_inv);
    Ok(&metric.g * t / (m as f64 - 2.0))
}

/// Lee form of the Weyl connection with `trace_g(DJ) = 0`.
///
/// `trace_g(DJ)` is affine in α, so the m×m system is assembled column by
/// column from the Lee forms `dx_l` and solved directly.
pub fn hermitian_weyl(metric: &MetricJet, jet: &crate::hermitian::JJet) -> Result<Vector> {
    use crate::hermitian::dj_trace;
    let m = metric.dim();
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::Dimension { op: "hermitian_weyl", detail: format!("needs even m ≥ 4, got {m}") });
    }
    let lc = ConnectionCoeffs::levi_civita(metric, false);
    let base = dj_trace(&lc, &metric.g_inv, jet);
    let mut a = Mat::zeros(m, m);
    for l in 0..m {
        let mut e = Vector::zeros(m);
        e[l] = 1.0;
        let col = dj_trace(&ConnectionCoeffs::weyl_from_alpha(metric, &e), &metric.g_inv, jet) - &base;
        a.set_column(l, &col);
    }
    a.lu()
        .solve(&(-base))
        .ok_or_else(|| Error::Precondition("trace_g(DJ) is not solvable for α".into()))
}

/// A horizontal 1-form stored as a covector on M.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialConnectionForm {
    pub point: Vector,
    pub values: Vector,
}

impl PartialConnectionForm {
    /// `max |λ(v)|` over the vertical basis.
    pub fn vertical_leak(&self, split: &Split) -> f64 {
        (0..split.k()).fold(0.0_f64, |a, i| a.max(self.values.dot(&split.v(i)).abs()))
    }

    pub fn on(&self, v: &Vector) -> f64 {
        self.values.dot(v)
    }
}

/// Restriction of a covector to ℋ, returned as a covector vanishing on 𝒱.
pub fn horizontal_part(split: &Split, covector: &Vector) -> Vector {
    split.proj_h.transpose() * covector
}

/// Bott partial connection Lee form `trace_g(B^𝒱)♭ / (m − n)` on ℋ.
pub fn bott_lee_form(shape: &ShapeAt) -> PartialConnectionForm {
    let k = shape.split.k() as f64;
    let t = shape.trace_b_vertical(&shape.lc);
    PartialConnectionForm { point: shape.split.point.clone(), values: shape.g() * t / k }
}

/// Lee form of the minimal Weyl connection of `(M, c, 𝒱)`:
/// `trace_g(B^𝒱)♭/(m−n) + trace_g(B^ℋ)♭/n`.
pub fn minimal_weyl(shape: &ShapeAt) -> Vector {
    let (k, n) = (shape.split.k() as f64, shape.split.n() as f64);
    let tv = shape.trace_b_vertical(&shape.lc);
    let th = shape.trace_b_horizontal(&shape.lc);
    shape.g() * (tv / k + th / n)
}

/// Action of a partial connection over ℋ on the basic lifts `Y_β` of the
/// codomain coordinate fields: `columns[a]` holds `ℋ(D_{E_a} Y_β)` in column β
/// for each horizontal frame vector `E_a`.
#[derive(Clone, Debug)]
pub struct PartialAction {
    pub columns: Vec<Mat>,
}

/// `λ(X) = (1/n) Σ_a g((D₁ − D₂)_X E_a, E_a)`: the Lee form of D₁ relative to
/// D₂ on ℋ. `lift` is the horizontal lift matrix, `dphi` the differential.
pub fn partial_lee_difference(
    d1: &PartialAction,
    d2: &PartialAction,
    split: &Split,
    g: &Mat,
    dphi: &Mat,
) -> Result<PartialConnectionForm> {
    let n = split.n();
    let gram = split.horizontal.transpose() * g * &split.horizontal;
    let residual = (gram - eye(n)).abs().max();
    if residual > 1e-10 {
        return Err(Error::NonOrthonormal { residual });
    }
    let mut values = Vector::zeros(g.nrows());
    for b in 0..n {
        let x = split.h(b);
        let delta = &d1.columns[b] - &d2.columns[b];
        let mut s = 0.0;
        for a in 0..n {
            let e = split.h(a);
            let c = dphi * &e;
            s += inner(g, &(&delta * c), &e);
        }
        values += g * x * (s / n as f64);
    }
    Ok(PartialConnectionForm { point: split.point.clone(), values })
}

/// Shift of a Weyl connection's Lee form expressed as the difference of two
/// coefficient arrays, restricted to ℋ: `λ = (1/n) Σ_a g((Γ₁−Γ₂)(X, E_a), E_a)`.
pub fn lee_difference_of_connections(c1: &ConnectionCoeffs, c2: &ConnectionCoeffs, split: &Split, g: &Mat) -> Vector {
    let n = split.n();
    let mut values = Vector::zeros(g.nrows());
    for b in 0..n {
        let x = split.h(b);
        let mut s = 0.0;
        for a in 0..n {
            let e = split.h(a);
            s += inner(g, &(c1.apply(&x, &e) - c2.apply(&x, &e)), &e);
        }
        values += g * x * (s / n as f64);
    }
    values
}

/// Random cubic polynomial `Σ c_ijk x_i x_j x_k + Σ b_ij x_i x_j + Σ a_i x_i`.
#[derive(Clone, Debug)]
pub struct Cubic {
    terms: Vec<(Vec<usize>, f64)>,
}

impl Cubic {
    pub fn random(m: usize, rng: &mut impl Rng) -> Self {
        let mut terms = Vec::new();
        for i in 0..m {
            terms.push((vec![i], rng.gen_range(-1.0..1.0)));
            for j in i..m {
                terms.push((vec![i, j], rng.gen_range(-1.0..1.0)));
                for k in j..m {
                    terms.push((vec![i, j, k], rng.gen_range(-1.0..1.0)));
                }
            }
        }
        Cubic { terms }
    }

    pub fn jet(&self, x: &[f64]) -> Jet2<f64> {
        let m = x.len();
        let mut f = Jet2::constant(0.0, m);
        for (idx, c) in &self.terms {
            let mut t = Jet2::constant(*c, m);
            for &i in idx {
                t = &t * &Jet2::variable(x[i], i, m);
            }
            f = &f + &t;
        }
        f
    }
}

/// Torsion-free perturbation `Γ + P` with `P` symmetric and constant.
pub fn perturbed(d: &ConnectionCoeffs, p: &Tensor3) -> ConnectionCoeffs {
    let mut gamma = d.gamma.clone();
    let m = gamma.dim();
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                gamma.add(k, i, j, p.get(k, i, j));
            }
        }
    }
    ConnectionCoeffs { gamma, dgamma: None }
}

fn random_symmetric(m: usize, rng: &mut impl Rng) -> Tensor3 {
    let mut p = Tensor3::zeros(m);
    for k in 0..m {
        for i in 0..m {
            for j in i..m {
                let v = rng.gen_range(-1.0..1.0);
                p.set(k, i, j, v);
                p.set(k, j, i, v);
            }
        }
    }
    p
}

fn trace_on(d: &ConnectionCoeffs, g_inv: &Mat, f: &Jet2<f64>) -> f64 {
    let m = f.dim();
    let grad = Vector::from_iterator(m, (0..m).map(|i| f.grad(i)));
    let hess = Mat::from_fn(m, m, |i, j| f.hess(i, j));
    d.trace_hessian(g_inv, &grad, &hess)
}

/// Equal-trace property over `points`: for a seeded random torsion-free
/// connection `D' = D + P`, the Weyl connection built from `D'` has the same
/// Laplacian on `functions` random cubics. The declared Weyl connection is
/// also recovered from its own trace. Measures `recovery` and `compatibility`.
pub fn equal_trace_check(
    w: &WeylStructure,
    points: &[Vec<f64>],
    seed: u64,
    functions: usize,
    tol: crate::report::Tolerance,
) -> Result<crate::report::VerdictReport> {
    use crate::report::{Series, VerdictReport};
    let m = w.dim();
    if m < 3 {
        return Err(Error::Dimension { op: "equal_trace_check", detail: "needs dimension at least 3".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_symmetric(m, &mut rng);
    let cubics: Vec<Cubic> = (0..functions).map(|_| Cubic::random(m, &mut rng)).collect();
    let rows = crate::parallel::per_point(points, |x| {
        let jet = w.jet_at(x)?;
        let d = ConnectionCoeffs::weyl(&jet.metric, &jet.lee, false);
        let alpha = jet.lee.alpha.clone();
        let any = perturbed(&d, &p);
        let d1 = ConnectionCoeffs::weyl_from_alpha(&jet.metric, &equal_trace_weyl(&any, &jet.metric)?);
        let (mut res, mut scale) = (0.0_f64, 0.0_f64);
        for c in &cubics {
            let f = c.jet(x);
            let (a, b) = (trace_on(&any, &jet.metric.g_inv, &f), trace_on(&d1, &jet.metric.g_inv, &f));
            res = res.max((a - b).abs());
            scale = scale.max(a.abs().max(b.abs()));
        }
        let rec = lee_trace_residual(&jet.metric, &d, &alpha)?;
        let comp = d.compatibility_residual(&jet.metric, &alpha);
        let gscale = jet.metric.dg.iter().map(|a| a.abs().max()).fold(alpha.abs().max(), f64::max);
        Ok((res, scale, rec, comp, gscale))
    })?;
    let (mut main, mut rec, mut comp) = (Series::default(), Series::default(), Series::default());
    for (a, b, c, d, e) in rows {
        main.push(a, b);
        rec.push(c, e);
        comp.push(d, e);
    }
    let mut r = VerdictReport::from_series("eq13", points.len(), 0, &main, tol)
        .with_measure("recovery", &rec, tol)
        .with_measure("compatibility", &comp, tol);
    r.verdict = crate::report::Verdict::from_bool(r.measures.iter().all(|m| m.verdict.passed()) && r.verdict.passed());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_trace_check_on_weighted_flat_space() {
        let c = crate::geometry::Chart::standard(3, 0.2, 1.0).unwrap();
        let w = WeylStructure::parse(c, &["1 + x1^2", "0", "0", "2", "x3", "1"], &["x2", "0", "x1*x3"]).unwrap();
        let pts = vec![vec![0.3, 0.5, 0.7], vec![0.9, 0.4, 0.25]];
        let r = equal_trace_check(&w, &pts, 7, 10, crate::report::Tolerance::new(1e-9)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.max_residual > 0.0);
    }
    use crate::geometry::Chart;

    fn conformally_flat(m: usize) -> WeylStructure {
        let chart = Chart::standard(m, -0.6, 0.6).unwrap();
        let c = "exp(2*(0.3*x1 - 0.2*x2^2 + 0.1*x1*x2))";
        let mut up = Vec::new();
        for i in 0..m {
            for j in i..m {
                up.push(if i == j { c } else { "0" });
            }
        }
        WeylStructure::parse(chart, &up, &vec!["0"; m]).unwrap()
    }

    #[test]
    fn flat_has_zero_christoffels() {
        let w = WeylStructure::flat(Chart::standard(3, -1.0, 1.0).unwrap());
        let c = christoffel(&w, &[0.1, 0.2, 0.3], true).unwrap();
        assert_eq!(c.gamma.max_abs(), 0.0);
        assert_eq!(c.dgamma.unwrap().max_abs(), 0.0);
    }

    #[test]
    fn conformal_metric_christoffels_match_closed_form() {
        let w = conformally_flat(3);
        let x = [0.2, -0.3, 0.4];
        let c = christoffel(&w, &x, false).unwrap();
        let f = [0.3 + 0.1 * x[1], -0.4 * x[1] + 0.1 * x[0], 0.0];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                    let want = d(k, i) * f[j] + d(k, j) * f[i] - d(i, j) * f[k];
                    assert!((c.gamma.get(k, i, j) - want).abs() < 1e-13);
                }
            }
        }
        let metric = w.metric_at(&x).unwrap();
        assert!(c.compatibility_residual(&metric, &Vector::zeros(3)) < 1e-12);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let w = conformally_flat(4)
            .with_lee_form(
                ["0.3*x2", "sin(x1)", "x3*x4", "0"]
                    .iter()
                    .map(|s| Chart::standard(4, -0.6, 0.6).unwrap().parse(s).unwrap())
                    .collect(),
            )
            .unwrap();
        let x = [0.1, 0.2, -0.3, 0.25];
        let c = weyl_connection(&w, &x, true).unwrap();
        let dg = c.dgamma.unwrap();
        let h = 1e-5;
        for p in 0..4 {
            let mut xp = x;
            let mut xm = x;
            xp[p] += h;
            xm[p] -= h;
            let (a, b) = (weyl_connection(&w, &xp, false).unwrap(), weyl_connection(&w, &xm, false).unwrap());
            for k in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        let fd = (a.gamma.get(k, i, j) - b.gamma.get(k, i, j)) / (2.0 * h);
                        assert!((fd - dg.get(p, k, i, j)).abs() < 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_with_dx1_on_flat_space() {
        let chart = Chart::standard(4, -1.0, 1.0).unwrap();
        let w = WeylStructure::parse(
            chart,
            &["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"],
            &["1", "0", "0", "0"],
        )
        .unwrap();
        let x = [0.3, 0.1, -0.2, 0.5];
        let c = weyl_connection(&w, &x, false).unwrap();
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let want = d(i, 0) * d(k, j) + d(j, 0) * d(k, i) - d(i, j) * d(k, 0);
                    assert_eq!(c.gamma.get(k, i, j), want);
                }
            }
        }
        let metric = w.metric_at(&x).unwrap();
        let alpha = Vector::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
        assert!(c.compatibility_residual(&metric, &alpha) < 1e-12);
        assert!(lee_trace_residual(&metric, &c, &alpha).unwrap() < 1e-12);
        assert_eq!(c.torsion(), 0.0);
    }

    #[test]
    fn equal_trace_recovers_fixed_points() {
        let w = conformally_flat(3);
        let x = [0.1, 0.2, 0.3];
        let metric = w.metric_at(&x).unwrap();
        let lc = ConnectionCoeffs::levi_civita(&metric, false);
        assert!(equal_trace_weyl(&lc, &metric).unwrap().abs().max() < 1e-14);
        let alpha = Vector::from_vec(vec![0.4, -0.2, 0.7]);
        let d = ConnectionCoeffs::weyl_from_alpha(&metric, &alpha);
        assert!((equal_trace_weyl(&d, &metric).unwrap() - &alpha).abs().max() < 1e-13);
        let flat2 = WeylStructure::flat(Chart::standard(2, -1.0, 1.0).unwrap());
        let m2 = flat2.metric_at(&[0.0, 0.0]).unwrap();
        assert!(equal_trace_weyl(&ConnectionCoeffs::levi_civita(&m2, false), &m2).is_err());
    }
}
