//! The complex moment map on representations of the double quiver.
//!
//! `mu(V)_i` is the vertex-`i` block of `sum_a [V_a, V_a*]`; its fibre over
//! `lambda_1 1, ..., lambda_k 1` is the space of representations of the
//! deformed preprojective algebra. Identities are checked in exact
//! rationals; sampling a fibre is done in complex doubles.

mod linalg;
mod newton;
mod verify;

pub use linalg::{rational_rank, singular_values, Matrix, Scalar};
pub use newton::{newton_from, newton_sample, NewtonConfig, NewtonOutcome};
pub use verify::{verify, LabReport};

use num_traits::Zero;
use thiserror::Error;

use crate::necklace::PathElement;
use crate::quiver::{DimVector, DoubleQuiver, Weights};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("matrix for arrow {arrow} has shape {found:?}, expected {expected:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {expected} matrices, found {found}")]
    ArrowCount { expected: usize, found: usize },
    #[error("dimension vector has {found} entries, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lambda·alpha ≠ 0")]
    TraceObstruction,
    #[error("no point with residual <= {tolerance:e} after {restarts} restarts (best {best:e})")]
    NoConvergence { restarts: usize, best: f64, tolerance: f64 },
    #[error(transparent)]
    Sigma(#[from] crate::sigma::SigmaError),
}

/// One matrix per arrow of the double quiver; `V_c` is
/// `alpha[head c] x alpha[tail c]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepPoint<T> {
    alpha: DimVector,
    maps: Vec<Matrix<T>>,
}

impl<T: Scalar> RepPoint<T> {
    pub fn new(dq: &DoubleQuiver, alpha: &DimVector, maps: Vec<Matrix<T>>) -> Result<Self, LabError> {
        check_alpha(dq, alpha)?;
        if maps.len() != dq.arrow_count() {
            return Err(LabError::ArrowCount {
                expected: dq.arrow_count(),
                found: maps.len(),
            });
        }
        for (c, m) in maps.iter().enumerate() {
            let expected = shape_of(dq, alpha, c);
            if m.shape() != expected {
                return Err(LabError::Shape {
                    arrow: dq.arrow_name(c),
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(RepPoint {
            alpha: alpha.clone(),
            maps,
        })
    }

    pub fn zero(dq: &DoubleQuiver, alpha: &DimVector) -> Result<Self, LabError> {
        check_alpha(dq, alpha)?;
        let maps = (0..dq.arrow_count())
            .map(|c| {
                let (r, k) = shape_of(dq, alpha, c);
                Matrix::zeros(r, k)
            })
            .collect();
        Ok(RepPoint {
            alpha: alpha.clone(),
            maps,
        })
    }

    /// Builds a point from a flat coordinate vector (arrow by arrow,
    /// row-major within each matrix).
    pub fn from_coordinates(dq: &DoubleQuiver, alpha: &DimVector, coords: &[T]) -> Result<Self, LabError> {
        let mut point = Self::zero(dq, alpha)?;
        assert_eq!(coords.len(), point.ambient_dimension(), "coordinate count");
        let mut it = coords.iter();
        for m in &mut point.maps {
            for slot in m.entries_mut() {
                *slot = it.next().expect("length checked").clone();
            }
        }
        Ok(point)
    }

    pub fn coordinates(&self) -> Vec<T> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn alpha(&self) -> &DimVector {
        &self.alpha
    }

    pub fn map(&self, c: usize) -> &Matrix<T> {
        &self.maps[c]
    }

    pub fn maps(&self) -> &[Matrix<T>] {
        &self.maps
    }

    /// `sum_c alpha[head c] * alpha[tail c]`.
    pub fn ambient_dimension(&self) -> usize {
        self.maps.iter().map(|m| m.rows() * m.cols()).sum()
    }

    pub fn plus(&self, other: &RepPoint<T>) -> RepPoint<T> {
        RepPoint {
            alpha: self.alpha.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn scaled(&self, s: &T) -> RepPoint<T> {
        RepPoint {
            alpha: self.alpha.clone(),
            maps: self.maps.iter().map(|a| a.scaled(s)).collect(),
        }
    }
}

fn check_alpha(dq: &DoubleQuiver, alpha: &DimVector) -> Result<(), LabError> {
    if alpha.len() != dq.vertex_count() {
        return Err(LabError::DimensionMismatch {
            expected: dq.vertex_count(),
            found: alpha.len(),
        });
    }
    Ok(())
}

fn shape_of(dq: &DoubleQuiver, alpha: &DimVector, c: usize) -> (usize, usize) {
    (alpha[dq.head(c)] as usize, alpha[dq.tail(c)] as usize)
}

fn check_point<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>) -> Result<(), LabError> {
    RepPoint::new(dq, &v.alpha, v.maps.clone()).map(|_| ())
}

/// A tuple of square blocks, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentValue<T>(pub Vec<Matrix<T>>);

impl<T: Scalar> MomentValue<T> {
    pub fn zero(alpha: &DimVector) -> Self {
        MomentValue(alpha.iter().map(|&a| Matrix::zeros(a as usize, a as usize)).collect())
    }

    /// `lambda_i * 1` in every block.
    pub fn scalar(alpha: &DimVector, lambda: &Weights) -> Self {
        MomentValue(
            alpha
                .iter()
                .zip(&lambda.0)
                .map(|(&a, l)| Matrix::<T>::identity(a as usize).scaled(&T::from_rational(l)))
                .collect(),
        )
    }

    pub fn trace_sum(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, m| acc + m.trace())
    }

    pub fn minus(&self, other: &Self) -> Self {
        MomentValue(self.0.iter().zip(&other.0).map(|(a, b)| a.minus(b)).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        MomentValue(self.0.iter().zip(&other.0).map(|(a, b)| a.plus(b)).collect())
    }

    /// Frobenius norm of the concatenated blocks.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(Matrix::frobenius_sqr).sum::<f64>().sqrt()
    }

    pub fn entries(&self) -> Vec<T> {
        self.0.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Matrix::is_zero)
    }
}

/// `mu(V) = sum_a [V_a, V_a*]`, split into vertex blocks.
pub fn moment<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>) -> Result<MomentValue<T>, LabError> {
    check_point(dq, v)?;
    Ok(moment_unchecked(dq, v))
}

fn moment_unchecked<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>) -> MomentValue<T> {
    let mut out = MomentValue::zero(&v.alpha);
    for j in 0..dq.base().arrow_count() {
        let (a, a_star) = (2 * j, 2 * j + 1);
        let head = dq.head(a);
        let tail = dq.tail(a);
        out.0[head] = out.0[head].plus(&v.maps[a].matmul(&v.maps[a_star]));
        out.0[tail] = out.0[tail].minus(&v.maps[a_star].matmul(&v.maps[a]));
    }
    out
}

/// Differential of the moment map at `v` applied to the tangent vector `x`:
/// `sum_a [X_a, V_a*] + [V_a, X_a*]`.
pub fn differential<T: Scalar>(
    dq: &DoubleQuiver,
    v: &RepPoint<T>,
    x: &RepPoint<T>,
) -> Result<MomentValue<T>, LabError> {
    check_point(dq, v)?;
    check_point(dq, x)?;
    Ok(differential_unchecked(dq, v, x))
}

fn differential_unchecked<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>, x: &RepPoint<T>) -> MomentValue<T> {
    let mut out = MomentValue::zero(&v.alpha);
    for j in 0..dq.base().arrow_count() {
        let (a, a_star) = (2 * j, 2 * j + 1);
        let head = dq.head(a);
        let tail = dq.tail(a);
        let at_head = x.maps[a]
            .matmul(&v.maps[a_star])
            .plus(&v.maps[a].matmul(&x.maps[a_star]));
        let at_tail = v.maps[a_star]
            .matmul(&x.maps[a])
            .plus(&x.maps[a_star].matmul(&v.maps[a]));
        out.0[head] = out.0[head].plus(&at_head);
        out.0[tail] = out.0[tail].minus(&at_tail);
    }
    out
}

/// Matrix of the differential: one column per ambient coordinate, one row
/// per entry of the moment blocks.
pub fn jacobian<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>) -> Result<Matrix<T>, LabError> {
    check_point(dq, v)?;
    Ok(jacobian_unchecked(dq, v))
}

pub(crate) fn jacobian_unchecked<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>) -> Matrix<T> {
    let n = v.ambient_dimension();
    let rows: usize = v.alpha.iter().map(|&a| (a * a) as usize).sum();
    let mut jac = Matrix::zeros(rows, n);
    let mut basis = vec![T::zero(); n];
    for col in 0..n {
        basis[col] = T::one();
        let x = RepPoint::from_coordinates(dq, &v.alpha, &basis).expect("shapes match");
        basis[col] = T::zero();
        for (row, value) in differential_unchecked(dq, v, &x).entries().into_iter().enumerate() {
            jac[(row, col)] = value;
        }
    }
    jac
}

/// Rank of the differential of the moment map at `v`.
pub fn jacobian_rank<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>, tol: f64) -> Result<usize, LabError> {
    Ok(jacobian(dq, v)?.rank(tol))
}

/// Dimension of `{(X_i) : X_head(c) V_c = V_c X_tail(c) for every arrow c}`.
pub fn endomorphism_dimension<T: Scalar>(dq: &DoubleQuiver, v: &RepPoint<T>, tol: f64) -> Result<usize, LabError> {
    check_point(dq, v)?;
    let alpha = &v.alpha;
    let offsets: Vec<usize> = alpha
        .iter()
        .scan(0usize, |acc, &a| {
            let start = *acc;
            *acc += (a * a) as usize;
            Some(start)
        })
        .collect();
    let unknowns: usize = alpha.iter().map(|&a| (a * a) as usize).sum();
    let equations: usize = v.maps.iter().map(|m| m.rows() * m.cols()).sum();
    let mut system = Matrix::zeros(equations, unknowns);
    for (vertex, &a) in alpha.iter().enumerate() {
        let a = a as usize;
        for idx in 0..a * a {
            let mut x = Matrix::<T>::zeros(a, a);
            x.entries_mut()[idx] = T::one();
            let col = offsets[vertex] + idx;
            let mut row = 0;
            for (c, vc) in v.maps.iter().enumerate() {
                let mut image = Matrix::zeros(vc.rows(), vc.cols());
                if dq.head(c) == vertex {
                    image = image.plus(&x.matmul(vc));
                }
                if dq.tail(c) == vertex {
                    image = image.minus(&vc.matmul(&x));
                }
                for value in image.entries() {
                    system[(row, col)] = value.clone();
                    row += 1;
                }
            }
        }
    }
    Ok(unknowns - system.rank(tol))
}

fn block_offsets(alpha: &DimVector) -> Vec<usize> {
    alpha
        .iter()
        .scan(0usize, |acc, &a| {
            let start = *acc;
            *acc += a as usize;
            Some(start)
        })
        .collect()
}

/// Evaluates a path-algebra element at `v` as an `n x n` block matrix,
/// `n = sum alpha_i`; a path from `i` to `j` lands in block `(j, i)`.
pub fn evaluate<T: Scalar>(dq: &DoubleQuiver, elt: &PathElement, v: &RepPoint<T>) -> Result<Matrix<T>, LabError> {
    check_point(dq, v)?;
    let offsets = block_offsets(&v.alpha);
    let n = v.alpha.total() as usize;
    let mut out = Matrix::<T>::zeros(n, n);
    for (path, coefficient) in elt.iter() {
        let start = path.start();
        let mut value = Matrix::<T>::identity(v.alpha[start] as usize);
        for &c in path.arrows() {
            value = v.maps[c].matmul(&value);
        }
        let c = T::from_rational(coefficient);
        let end = path.end(dq);
        for i in 0..value.rows() {
            for j in 0..value.cols() {
                let slot: &mut T = &mut out[(offsets[end] + i, offsets[start] + j)];
                *slot = slot.clone() + value[(i, j)].clone() * c.clone();
            }
        }
    }
    Ok(out)
}

/// The path-algebra element `sum_i lambda_i e_i`.
pub fn weight_element(lambda: &Weights) -> PathElement {
    lambda
        .0
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_zero())
        .map(|(i, l)| (crate::necklace::Path::idempotent(i), l.clone()))
        .collect()
}

/// Block-diagonal matrix of a moment value.
pub fn block_diagonal<T: Scalar>(alpha: &DimVector, value: &MomentValue<T>) -> Matrix<T> {
    let offsets = block_offsets(alpha);
    let n = alpha.total() as usize;
    let mut out = Matrix::zeros(n, n);
    for (vertex, block) in value.0.iter().enumerate() {
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                out[(offsets[vertex] + i, offsets[vertex] + j)] = block[(i, j)].clone();
            }
        }
    }
    out
}
