use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{DistributionSpec, MapJets, WeylStructure};
use crate::linalg::{columns, gram_schmidt, inner, Mat, Vector};

/// Relative tolerance below which a Gram–Schmidt candidate counts as dependent.
const DEPENDENCE_TOL: f64 = 1e-7;

/// An orthonormal frame at a point, vertical columns first.
#[derive(Clone, Debug)]
pub struct PointFrame {
    pub point: Vector,
    pub columns: Mat,
    /// Number of leading columns spanning 𝒱.
    pub vertical: usize,
    pub orthonormal: bool,
}

impl PointFrame {
    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    pub fn column(&self, i: usize) -> Vector {
        self.columns.column(i).into_owned()
    }

    pub fn vertical_columns(&self) -> Mat {
        self.columns.columns(0, self.vertical).into_owned()
    }

    pub fn horizontal_columns(&self) -> Mat {
        let m = self.dim();
        self.columns.columns(self.vertical, m - self.vertical).into_owned()
    }

    /// `max |FᵀgF − I|`.
    pub fn gram_residual(&self, g: &Mat) -> f64 {
        let gram = self.columns.transpose() * g * &self.columns;
        (gram - crate::linalg::eye(self.dim())).abs().max()
    }
}

fn sign(x: f64) -> i8 {
    if x < 0.0 {
        -1
    } else {
        1
    }
}

/// Orthonormal frame whose first columns span `vertical_span`, completed by
/// Gram–Schmidt on the coordinate basis; the last column is negated if needed
/// to match `orientation`.
pub fn adapted_frame(g: &Mat, vertical_span: &[Vector], orientation: i8, point: &Vector) -> Result<PointFrame> {
    let m = g.nrows();
    let k = vertical_span.len();
    let vertical = gram_schmidt(g, vertical_span, DEPENDENCE_TOL, k);
    if vertical.len() < k {
        return Err(Error::DegenerateDistribution { point: point.iter().copied().collect() });
    }
    let mut cands = vertical;
    cands.extend((0..m).map(|i| {
        let mut e = Vector::zeros(m);
        e[i] = 1.0;
        e
    }));
    let all = gram_schmidt(g, &cands, DEPENDENCE_TOL, m);
    let mut cols = columns(&all, m);
    if sign(cols.determinant()) != orientation {
        let mut last = cols.column_mut(m - 1);
        last *= -1.0;
    }
    Ok(PointFrame { point: point.clone(), columns: cols, vertical: k, orthonormal: true })
}

/// Orthonormal frame of a Weyl structure at `x`, optionally adapted to an
/// explicit distribution.
pub fn orthonormal_frame(w: &WeylStructure, x: &[f64], adapted_to: Option<&DistributionSpec>) -> Result<PointFrame> {
    let metric = w.metric_at(x)?;
    let span: Vec<Vector> = match adapted_to {
        None => Vec::new(),
        Some(d) => {
            let jet = d.jet_at(x)?;
            (0..jet.span.ncols()).map(|a| jet.field(a)).collect()
        }
    };
    adapted_frame(&metric.g, &span, w.chart().orientation(), &Vector::from_column_slice(x))
}

/// Orthogonal splitting `TM = 𝒱 ⊕ ℋ` at a point with orthonormal bases.
///
/// The concatenated frame `(vertical, horizontal)` is positively oriented.
#[derive(Clone, Debug)]
pub struct Split {
    pub point: Vector,
    /// m×k, orthonormal basis of 𝒱.
    pub vertical: Mat,
    /// m×n, orthonormal basis of ℋ.
    pub horizontal: Mat,
    /// g-orthogonal projector onto 𝒱.
    pub proj_v: Mat,
    /// g-orthogonal projector onto ℋ.
    pub proj_h: Mat,
}

impl Split {
    /// Kernel of `dφ` and its orthogonal complement.
    ///
    /// The horizontal basis is Gram–Schmidt applied to the horizontal lifts
    /// of the codomain coordinate fields, so its image under dφ is oriented
    /// like the codomain chart (flipped when `codomain_orientation` is −1);
    /// the vertical part absorbs the remaining sign.
    pub fn from_map(
        g: &Mat,
        g_inv: &Mat,
        jets: &MapJets,
        orientation: i8,
        codomain_orientation: i8,
        point: &Vector,
    ) -> Result<(Split, Mat)> {
        let (n, m) = jets.dphi.shape();
        let pt = || point.iter().copied().collect::<Vec<_>>();
        let p = &jets.dphi * g_inv * jets.dphi.transpose();
        let p_inv = p.clone().try_inverse().ok_or_else(|| Error::RankDeficient { point: pt(), expected: n })?;
        let lift = g_inv * jets.dphi.transpose() * p_inv;
        let proj_h = &lift * &jets.dphi;
        let proj_v = crate::linalg::eye(m) - &proj_h;
        let k = m - n;
        let vcands: Vec<Vector> = (0..m).map(|i| proj_v.column(i).into_owned()).collect();
        let vertical = gram_schmidt(g, &vcands, DEPENDENCE_TOL, k);
        if vertical.len() < k {
            return Err(Error::DegenerateFibre { point: pt() });
        }
        let hcands: Vec<Vector> = (0..n).map(|b| lift.column(b).into_owned()).collect();
        let horizontal = gram_schmidt(g, &hcands, DEPENDENCE_TOL, n);
        if horizontal.len() < n {
            return Err(Error::RankDeficient { point: pt(), expected: n });
        }
        let mut split = Split {
            point: point.clone(),
            vertical: columns(&vertical, m),
            horizontal: columns(&horizontal, m),
            proj_v,
            proj_h,
        };
        if codomain_orientation < 0 && n > 0 {
            let mut c = split.horizontal.column_mut(n - 1);
            c *= -1.0;
        }
        split.orient(orientation, false);
        Ok((split, lift))
    }

    /// Splitting from explicit spanning fields (m×k).
    pub fn from_span(g: &Mat, span: &Mat, orientation: i8, point: &Vector) -> Result<Split> {
        let m = g.nrows();
        let k = span.ncols();
        let pt = || point.iter().copied().collect::<Vec<_>>();
        let gram = span.transpose() * g * span;
        let norms: f64 = (0..k).map(|a| gram[(a, a)]).product();
        if gram.determinant().abs().partial_cmp(&(1e-10 * norms)) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::DegenerateDistribution { point: pt() });
        }
        let gram_inv = gram.try_inverse().ok_or_else(|| Error::DegenerateDistribution { point: pt() })?;
        let proj_v = span * gram_inv * span.transpose() * g;
        let proj_h = crate::linalg::eye(m) - &proj_v;
        let vcands: Vec<Vector> = (0..k).map(|a| span.column(a).into_owned()).collect();
        let vertical = gram_schmidt(g, &vcands, DEPENDENCE_TOL, k);
        let hcands: Vec<Vector> = (0..m).map(|i| proj_h.column(i).into_owned()).collect();
        let horizontal = gram_schmidt(g, &hcands, DEPENDENCE_TOL, m - k);
        if vertical.len() < k || horizontal.len() < m - k {
            return Err(Error::DegenerateDistribution { point: pt() });
        }
        let mut split = Split {
            point: point.clone(),
            vertical: columns(&vertical, m),
            horizontal: columns(&horizontal, m),
            proj_v,
            proj_h,
        };
        split.orient(orientation, true);
        Ok(split)
    }

    fn orient(&mut self, orientation: i8, flip_horizontal: bool) {
        let det = self.frame_matrix().determinant();
        if sign(det) == orientation {
            return;
        }
        let (k, n) = (self.vertical.ncols(), self.horizontal.ncols());
        if (flip_horizontal && n > 0) || k == 0 {
            let mut c = self.horizontal.column_mut(n - 1);
            c *= -1.0;
        } else {
            let mut c = self.vertical.column_mut(k - 1);
            c *= -1.0;
        }
    }

    pub fn k(&self) -> usize {
        self.vertical.ncols()
    }

    pub fn n(&self) -> usize {
        self.horizontal.ncols()
    }

    pub fn frame_matrix(&self) -> Mat {
        let m = self.proj_v.nrows();
        let mut f = Mat::zeros(m, m);
        f.columns_mut(0, self.k()).copy_from(&self.vertical);
        f.columns_mut(self.k(), self.n()).copy_from(&self.horizontal);
        f
    }

    pub fn frame(&self) -> PointFrame {
        PointFrame { point: self.point.clone(), columns: self.frame_matrix(), vertical: self.k(), orthonormal: true }
    }

    pub fn h(&self, a: usize) -> Vector {
        self.horizontal.column(a).into_owned()
    }

    pub fn v(&self, a: usize) -> Vector {
        self.vertical.column(a).into_owned()
    }

    /// `max |g(u, h)|` over basis pairs.
    pub fn orthogonality_residual(&self, g: &Mat) -> f64 {
        (self.vertical.transpose() * g * &self.horizontal).abs().max()
    }
}

/// The complex null vector `(F_i + iF_j)/√2` and its conjugate.
pub fn null_pair(frame: &PointFrame, g: &Mat, i: usize, j: usize) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let (a, b) = (frame.column(i), frame.column(j));
    let residual = (inner(g, &a, &a) - 1.0)
        .abs()
        .max((inner(g, &b, &b) - 1.0).abs())
        .max(inner(g, &a, &b).abs());
    if residual > 1e-10 {
        return Err(Error::NonOrthonormal { residual });
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u: Vec<Complex64> = a.iter().zip(b.iter()).map(|(x, y)| Complex64::new(x * s, y * s)).collect();
    let ubar = u.iter().map(|z| z.conj()).collect();
    Ok((u, ubar))
}

/// Complex-bilinear `g(u, v)`.
pub fn complex_inner(g: &Mat, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let m = g.nrows();
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..m {
        for b in 0..m {
            s += u[a] * v[b] * g[(a, b)];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Chart, MapSpec};

    #[test]
    fn euclidean_frame_is_identity() {
        let w = WeylStructure::flat(Chart::standard(3, -1.0, 1.0).unwrap());
        let f = orthonormal_frame(&w, &[0.1, 0.2, 0.3], None).unwrap();
        assert_eq!(f.columns, crate::linalg::eye(3));
    }

    #[test]
    fn reversed_orientation_flips_last_column() {
        let w = WeylStructure::flat(Chart::standard(3, -1.0, 1.0).unwrap().with_orientation(-1));
        let f = orthonormal_frame(&w, &[0.1, 0.2, 0.3], None).unwrap();
        assert!(f.columns.determinant() < 0.0);
    }

    #[test]
    fn gibbons_hawking_vertical_is_normalized_time() {
        let chart = Chart::new(
            ["x1", "x2", "x3", "t"].map(String::from).to_vec(),
            vec![(0.5, 1.5), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)],
            1,
        )
        .unwrap();
        let w = WeylStructure::parse(
            chart.clone(),
            &["1 + x1", "0", "0", "0", "1 + x1", "0", "0", "1 + x1 + x2^2/(1 + x1)", "x2/(1 + x1)", "1/(1 + x1)"],
            &["0", "0", "0", "0"],
        )
        .unwrap();
        let d = DistributionSpec::explicit(&chart, &[vec!["0", "0", "0", "1"]]).unwrap();
        let x = [1.2, 0.4, -0.3, 0.5];
        let f = orthonormal_frame(&w, &x, Some(&d)).unwrap();
        let h: f64 = 2.2;
        assert!((f.column(0)[3] - h.sqrt()).abs() < 1e-12);
        assert!(f.column(0).rows(0, 3).norm() < 1e-14);
        let g = w.metric_at(&x).unwrap().g;
        assert!(f.gram_residual(&g) < 1e-12);
        assert!(f.columns.determinant() > 0.0);
    }

    #[test]
    fn collinear_fields_are_degenerate() {
        let chart = Chart::standard(3, -1.0, 1.0).unwrap();
        let w = WeylStructure::flat(chart.clone());
        let d = DistributionSpec::explicit(&chart, &[vec!["1", "x2", "0"], vec!["2", "2*x2", "0"]]).unwrap();
        assert!(matches!(orthonormal_frame(&w, &[0.1, 0.2, 0.3], Some(&d)), Err(Error::DegenerateDistribution { .. })));
    }

    fn killing() -> MapSpec {
        let dom = WeylStructure::flat(Chart::standard(4, 0.5, 1.5).unwrap());
        let cod = WeylStructure::flat(
            Chart::new(["y1", "y2", "y3"].map(String::from).to_vec(), vec![(0.1, 3.0), (-2.0, 2.0), (-2.0, 2.0)], 1).unwrap(),
        );
        MapSpec::parse(dom, cod, &["sqrt(x1^2 + x2^2)", "x3", "x4"]).unwrap()
    }

    #[test]
    fn killing_kernel_is_second_axis() {
        let map = killing();
        let x = [1.0, 0.0, 0.7, 0.8];
        let jets = map.jets_at(&x).unwrap();
        let metric = map.domain().metric_at(&x).unwrap();
        let (split, _) = Split::from_map(&metric.g, &metric.g_inv, &jets, 1, 1, &Vector::from_column_slice(&x)).unwrap();
        let v = split.v(0);
        assert!((v[1].abs() - 1.0).abs() < 1e-14);
        assert!(split.orthogonality_residual(&metric.g) < 1e-14);
        assert!(split.frame_matrix().determinant() > 0.0);
    }

    #[test]
    fn rank_deficient_map() {
        let dom = WeylStructure::flat(Chart::standard(4, -1.0, 1.0).unwrap());
        let cod = WeylStructure::flat(Chart::standard(3, -5.0, 5.0).unwrap());
        let map = MapSpec::parse(dom, cod, &["x1", "x2", "x1 + x2"]).unwrap();
        let x = [0.1, 0.2, 0.3, 0.4];
        let jets = map.jets_at(&x).unwrap();
        assert!(matches!(map.check_regular(&x, &jets), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn null_vectors() {
        let w = WeylStructure::flat(Chart::standard(3, -1.0, 1.0).unwrap());
        let f = orthonormal_frame(&w, &[0.0; 3], None).unwrap();
        let g = crate::linalg::eye(3);
        let (u, ubar) = null_pair(&f, &g, 0, 1).unwrap();
        assert!(complex_inner(&g, &u, &u).norm() < 1e-15);
        assert!((complex_inner(&g, &u, &ubar) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let (v, _) = null_pair(&f, &g, 1, 0).unwrap();
        // (e2 + i e1) = i (e1 − i e2): conjugate up to a phase
        for (a, b) in v.iter().zip(&ubar) {
            assert!((a - b * Complex64::new(0.0, 1.0)).norm() < 1e-15);
        }
        let mut bad = f.clone();
        bad.columns[(0, 0)] = 2.0;
        assert!(null_pair(&bad, &g, 0, 1).is_err());
    }
}
