//! Small dense matrices over exact rationals or complex doubles.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Scalar field for representation matrices.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &BigRational) -> Self;

    /// Rank of `m`. Floating fields count singular values above
    /// `tol * max(1, sigma_max)`; exact fields ignore `tol`.
    fn rank(m: &Matrix<Self>, tol: f64) -> usize;

    /// Squared modulus, as a double.
    fn norm_sqr(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn rank(m: &Matrix<Self>, _tol: f64) -> usize {
        rational_rank(m)
    }

    fn norm_sqr(&self) -> f64 {
        let x = self.to_f64().unwrap_or(f64::INFINITY);
        x * x
    }
}

impl Scalar for Complex64 {
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().expect("rational converts to f64"), 0.0)
    }

    fn rank(m: &Matrix<Self>, tol: f64) -> usize {
        let values = singular_values(m);
        let largest = values.iter().cloned().fold(0.0, f64::max);
        let cutoff = tol * largest.max(1.0);
        values.iter().filter(|&&s| s > cutoff).count()
    }

    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Row-major entries.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other.data[k * other.cols + j].clone();
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = slot.clone() + prod;
                }
            }
        }
        out
    }

    pub fn plus(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), other.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn minus(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), other.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scaled(&self, s: &T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.data.iter().map(Scalar::norm_sqr).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self, tol: f64) -> usize {
        T::rank(self, tol)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank by fraction-exact Gaussian elimination.
pub fn rational_rank(m: &Matrix<BigRational>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.data.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let p = a[(rank, col)].clone();
        for r in rank + 1..rows {
            if a[(r, col)].is_zero() {
                continue;
            }
            let factor = &a[(r, col)] / &p;
            for j in col..cols {
                let delta = &factor * &a[(rank, j)];
                a[(r, j)] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_nalgebra(m: &Matrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

/// Singular values of a complex matrix (empty for degenerate shapes).
pub fn singular_values(m: &Matrix<Complex64>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    to_nalgebra(m).singular_values().iter().copied().collect()
}
