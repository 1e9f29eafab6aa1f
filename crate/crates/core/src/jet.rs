//! Order-2 jets: value, gradient and exactly symmetric Hessian.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Value, gradient and Hessian of a scalar function at a point.
///
/// The Hessian is stored as its packed upper triangle, so it is symmetric by
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<T> {
    value: T,
    grad: Vec<T>,
    hess: Vec<T>,
}

fn packed_len(m: usize) -> usize {
    m * (m + 1) / 2
}

fn packed_index(m: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * (2 * m - i + 1) / 2 + (j - i)
}

impl<T: Scalar> Jet2<T> {
    pub fn constant(value: T, dim: usize) -> Self {
        Jet2 {
            value,
            grad: vec![T::zero(); dim],
            hess: vec![T::zero(); packed_len(dim)],
        }
    }

    /// The coordinate function `x_index` evaluated at `value`.
    pub fn variable(value: T, index: usize, dim: usize) -> Self {
        let mut j = Self::constant(value, dim);
        j.grad[index] = T::one();
        j
    }

    /// Builds a jet from a full Hessian, symmetrizing it.
    pub fn from_parts(value: T, grad: Vec<T>, hess: &[Vec<T>]) -> Self {
        let m = grad.len();
        let half = T::lit(0.5);
        let mut packed = vec![T::zero(); packed_len(m)];
        for i in 0..m {
            for j in i..m {
                packed[packed_index(m, i, j)] = (hess[i][j] + hess[j][i]) * half;
            }
        }
        Jet2 { value, grad, hess: packed }
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn value(&self) -> T {
        self.value
    }

    pub fn gradient(&self) -> &[T] {
        &self.grad
    }

    pub fn grad(&self, i: usize) -> T {
        self.grad[i]
    }

    pub fn hess(&self, i: usize, j: usize) -> T {
        self.hess[packed_index(self.dim(), i, j)]
    }

    /// Full Hessian as nested rows.
    pub fn hessian(&self) -> Vec<Vec<T>> {
        let m = self.dim();
        (0..m).map(|i| (0..m).map(|j| self.hess(i, j)).collect()).collect()
    }

    pub fn scale(&self, c: T) -> Self {
        Jet2 {
            value: self.value * c,
            grad: self.grad.iter().map(|&g| g * c).collect(),
            hess: self.hess.iter().map(|&h| h * c).collect(),
        }
    }

    /// Chain rule for a scalar function with value `f0`, first derivative
    /// `f1` and second derivative `f2` at `self.value`.
    pub fn compose(&self, f0: T, f1: T, f2: T) -> Self {
        let m = self.dim();
        let mut hess = vec![T::zero(); packed_len(m)];
        for i in 0..m {
            for j in i..m {
                let k = packed_index(m, i, j);
                hess[k] = f2 * self.grad[i] * self.grad[j] + f1 * self.hess[k];
            }
        }
        Jet2 {
            value: f0,
            grad: self.grad.iter().map(|&g| f1 * g).collect(),
            hess,
        }
    }

    /// Quotient; `None` when the denominator value is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.value == T::zero() {
            return None;
        }
        let v = rhs.value;
        let inv = rhs.compose(T::one() / v, -T::one() / (v * v), T::lit(2.0) / (v * v * v));
        Some(self * &inv)
    }

    /// Integer power by repeated multiplication; `None` for a negative power
    /// of a zero value.
    pub fn powi(&self, n: i64) -> Option<Self> {
        let m = self.dim();
        let mut result = Self::constant(T::one(), m);
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            Self::constant(T::one(), m).checked_div(&result)
        } else {
            Some(result)
        }
    }
}

impl<T: Scalar> Add for &Jet2<T> {
    type Output = Jet2<T>;
    fn add(self, rhs: Self) -> Jet2<T> {
        Jet2 {
            value: self.value + rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(&a, &b)| a + b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Jet2<T> {
    type Output = Jet2<T>;
    fn sub(self, rhs: Self) -> Jet2<T> {
        Jet2 {
            value: self.value - rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(&a, &b)| a - b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Jet2<T> {
    type Output = Jet2<T>;
    fn mul(self, rhs: Self) -> Jet2<T> {
        let m = self.dim();
        let mut hess = vec![T::zero(); packed_len(m)];
        for i in 0..m {
            for j in i..m {
                let k = packed_index(m, i, j);
                hess[k] = self.hess[k] * rhs.value
                    + rhs.hess[k] * self.value
                    + self.grad[i] * rhs.grad[j]
                    + rhs.grad[i] * self.grad[j];
            }
        }
        Jet2 {
            value: self.value * rhs.value,
            grad: (0..m).map(|i| self.grad[i] * rhs.value + rhs.grad[i] * self.value).collect(),
            hess,
        }
    }
}

impl<T: Scalar> Neg for &Jet2<T> {
    type Output = Jet2<T>;
    fn neg(self) -> Jet2<T> {
        self.scale(-T::one())
    }
}
