//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// m×m identity.
pub fn eye(m: usize) -> Mat {
    Mat::identity(m, m)
}

/// g(u, v).
pub fn inner(g: &Mat, u: &Vector, v: &Vector) -> f64 {
    (u.transpose() * g * v)[(0, 0)]
}

/// Lowers a vector: g(v, ·) as a covector.
pub fn flat(g: &Mat, v: &Vector) -> Vector {
    g * v
}

/// Raises a covector with the inverse metric.
pub fn sharp(g_inv: &Mat, a: &Vector) -> Vector {
    g_inv * a
}

/// Maximum absolute entry.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_vec(v: &Vector) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Modified Gram–Schmidt in the inner product `g`, run twice per vector.
/// Candidates whose remaining norm falls below `rel_tol` times the larger of
/// their original norm and the largest candidate norm are skipped. Stops
/// after `limit` accepted vectors.
pub fn gram_schmidt(g: &Mat, candidates: &[Vector], rel_tol: f64, limit: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::with_capacity(limit);
    let largest = candidates.iter().fold(0.0_f64, |a, c| a.max(inner(g, c, c).max(0.0).sqrt()));
    for c in candidates {
        if out.len() == limit {
            break;
        }
        let n0 = inner(g, c, c).max(0.0).sqrt();
        if n0 == 0.0 {
            continue;
        }
        let mut v = c.clone();
        for _ in 0..2 {
            for e in &out {
                let p = inner(g, &v, e);
                v -= e * p;
            }
        }
        let n = inner(g, &v, &v).max(0.0).sqrt();
        if n > rel_tol * n0.max(largest) {
            out.push(v / n);
        }
    }
    out
}

/// Columns as a matrix.
pub fn columns(vs: &[Vector], rows: usize) -> Mat {
    let mut m = Mat::zeros(rows, vs.len());
    for (j, v) in vs.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Rank-3 array `t[a][b][c]` of side `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    m: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(m: usize) -> Self {
        Tensor3 { m, data: vec![0.0; m * m * m] }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.data[(a * self.m + b) * self.m + c]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, c: usize, v: f64) {
        let m = self.m;
        self.data[(a * m + b) * m + c] = v;
    }

    #[inline]
    pub fn add(&mut self, a: usize, b: usize, c: usize, v: f64) {
        let m = self.m;
        self.data[(a * m + b) * m + c] += v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Tensor3) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

/// Rank-4 array `t[a][b][c][d]` of side `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4 {
    m: usize,
    data: Vec<f64>,
}

impl Tensor4 {
    pub fn zeros(m: usize) -> Self {
        Tensor4 { m, data: vec![0.0; m * m * m * m] }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let m = self.m;
        self.data[((a * m + b) * m + c) * m + d]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: f64) {
        let m = self.m;
        self.data[((a * m + b) * m + c) * m + d] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Tensor4) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

/// Central difference with one Richardson step:
/// `(4 D(h/2) − D(h)) / 3` where `D(h) = (f(x+hd) − f(x−hd)) / 2h`.
pub fn richardson<E>(
    f: impl Fn(&Vector) -> Result<Vector, E>,
    x: &Vector,
    dir: &Vector,
    h: f64,
) -> Result<Vector, E> {
    let central = |s: f64| -> Result<Vector, E> {
        let p = f(&(x + dir * s))?;
        let q = f(&(x - dir * s))?;
        Ok((p - q) / (2.0 * s))
    };
    let d1 = central(h)?;
    let d2 = central(h / 2.0)?;
    Ok((d2 * 4.0 - d1) / 3.0)
}
