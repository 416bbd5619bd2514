//! Euler form, Tits form and `p(alpha) = 1 - chi(alpha, alpha)`.
//!
//! Matrix entries are arrow counts; every evaluation is done in `BigInt`
//! because reflections on wild quivers grow entries quickly.

mod roots;

pub use roots::{enumerate_roots, has_connected_support, is_fundamental, RootKind, RootSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quiver::{DimVector, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} carries loops and admits no reflection")]
    LoopVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("the zero vector has no divisibility")]
    ZeroVector,
}

/// Euler matrix `chi_ij = delta_ij - #{arrows i -> j}` of a quiver and its
/// symmetrisation `T = chi + chi^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormsContext {
    quiver: Quiver,
    euler: Vec<Vec<i64>>,
    tits: Vec<Vec<i64>>,
}

impl FormsContext {
    pub fn new(quiver: &Quiver) -> Self {
        let k = quiver.vertex_count();
        let mut euler = vec![vec![0i64; k]; k];
        for (i, row) in euler.iter_mut().enumerate() {
            row[i] = 1;
        }
        for a in quiver.arrows() {
            euler[a.tail][a.head] -= 1;
        }
        let tits = (0..k)
            .map(|i| (0..k).map(|j| euler[i][j] + euler[j][i]).collect())
            .collect();
        FormsContext {
            quiver: quiver.clone(),
            euler,
            tits,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.euler.len()
    }

    pub fn euler_matrix(&self) -> &[Vec<i64>] {
        &self.euler
    }

    pub fn tits_matrix(&self) -> &[Vec<i64>] {
        &self.tits
    }

    /// True when vertex `i` carries no loop (so `s_i` is defined).
    pub fn is_loop_free(&self, i: usize) -> bool {
        self.euler[i][i] == 1
    }

    fn check<T>(&self, v: &[T]) -> Result<(), FormsError> {
        if v.len() != self.rank() {
            return Err(FormsError::LengthMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    fn bilinear<T>(&self, m: &[Vec<i64>], a: &[T], b: &[T]) -> Result<BigInt, FormsError>
    where
        T: Clone + Into<BigInt>,
    {
        self.check(a)?;
        self.check(b)?;
        let a: Vec<BigInt> = a.iter().cloned().map(Into::into).collect();
        let b: Vec<BigInt> = b.iter().cloned().map(Into::into).collect();
        let mut total = BigInt::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if m[i][j] != 0 && !bj.is_zero() {
                    total += ai * bj * m[i][j];
                }
            }
        }
        Ok(total)
    }

    /// `alpha^T chi beta`.
    pub fn chi<T: Clone + Into<BigInt>>(&self, alpha: &[T], beta: &[T]) -> Result<BigInt, FormsError> {
        self.bilinear(&self.euler, alpha, beta)
    }

    /// Tits form `chi(alpha, beta) + chi(beta, alpha)`.
    pub fn tits<T: Clone + Into<BigInt>>(&self, alpha: &[T], beta: &[T]) -> Result<BigInt, FormsError> {
        self.bilinear(&self.tits, alpha, beta)
    }

    /// `1 - chi(alpha, alpha)`.
    pub fn p<T: Clone + Into<BigInt>>(&self, alpha: &[T]) -> Result<BigInt, FormsError> {
        Ok(BigInt::one() - self.chi(alpha, alpha)?)
    }

    /// `T(alpha, e_i)`.
    pub fn tits_with_simple<T: Clone + Into<BigInt>>(&self, alpha: &[T], i: usize) -> Result<BigInt, FormsError> {
        self.check(alpha)?;
        if i >= self.rank() {
            return Err(FormsError::VertexOutOfRange(i));
        }
        Ok(alpha
            .iter()
            .zip(&self.tits)
            .map(|(a, row)| a.clone().into() * row[i])
            .sum())
    }

    /// Simple reflection `s_i(alpha) = alpha - T(alpha, e_i) e_i` at a loop-free vertex.
    pub fn reflect<T: Clone + Into<BigInt>>(&self, i: usize, alpha: &[T]) -> Result<Vec<BigInt>, FormsError> {
        let t = self.tits_with_simple(alpha, i)?;
        if !self.is_loop_free(i) {
            return Err(FormsError::LoopVertex(self.quiver.vertices()[i].clone()));
        }
        let mut out: Vec<BigInt> = alpha.iter().cloned().map(Into::into).collect();
        out[i] -= t;
        Ok(out)
    }
}

/// True when the entries of `alpha` have gcd one.
pub fn is_indivisible(alpha: &DimVector) -> Result<bool, FormsError> {
    let g = alpha.iter().fold(0u64, |g, &x| g.gcd(&x));
    match g {
        0 => Err(FormsError::ZeroVector),
        g => Ok(g == 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> FormsContext {
        FormsContext::new(&Quiver::from_indices(2, &[(0, 1)]))
    }

    fn cm() -> FormsContext {
        FormsContext::new(&Quiver::from_indices(2, &[(0, 0), (1, 0)]))
    }

    #[test]
    fn matrices() {
        let c = cm();
        assert_eq!(c.euler_matrix(), [vec![0, 0], vec![-1, 1]]);
        assert_eq!(c.tits_matrix(), [vec![0, -1], vec![-1, 2]]);
    }

    #[test]
    fn chi_examples() {
        assert_eq!(a2().chi(&[1u64, 1], &[1, 1]).unwrap(), BigInt::from(1));
        assert_eq!(a2().chi(&[0u64, 0], &[3, 5]).unwrap(), BigInt::from(0));
        for n in 0..6u64 {
            assert_eq!(cm().chi(&[n, 1], &[n, 1]).unwrap(), BigInt::from(1 - n as i64));
            assert_eq!(cm().p(&[n, 1]).unwrap(), BigInt::from(n));
        }
        assert_eq!(
            a2().chi(&[1u64], &[1, 1]),
            Err(FormsError::LengthMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn p_of_simple_roots_counts_loops() {
        let q = Quiver::from_indices(2, &[(0, 0), (0, 0), (0, 0), (0, 1)]);
        let c = FormsContext::new(&q);
        assert_eq!(c.p(&[1u64, 0]).unwrap(), BigInt::from(3));
        assert_eq!(c.p(&[0u64, 1]).unwrap(), BigInt::from(0));
    }

    #[test]
    fn reflections() {
        let c = a2();
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(c.reflect(0, &[1i64, 0]).unwrap(), b(&[-1, 0]));
        assert_eq!(c.reflect(1, &[1i64, 0]).unwrap(), b(&[1, 1]));
        assert!(matches!(cm().reflect(0, &[1i64, 0]), Err(FormsError::LoopVertex(_))));
        assert!(matches!(c.reflect(2, &[1i64, 0]), Err(FormsError::VertexOutOfRange(2))));
    }

    #[test]
    fn indivisibility() {
        assert_eq!(is_indivisible(&DimVector(vec![2, 1])), Ok(true));
        assert_eq!(is_indivisible(&DimVector(vec![2, 4])), Ok(false));
        assert_eq!(is_indivisible(&DimVector(vec![1])), Ok(true));
        assert_eq!(is_indivisible(&DimVector(vec![0, 0])), Err(FormsError::ZeroVector));
    }

    fn arb_context() -> impl Strategy<Value = FormsContext> {
        (1usize..=4)
            .prop_flat_map(|k| (Just(k), prop::collection::vec((0..k, 0..k), 0..=6)))
            .prop_map(|(k, arrows)| FormsContext::new(&Quiver::from_indices(k, &arrows)))
    }

    proptest! {
        #[test]
        fn tits_is_symmetrised_euler(ctx in arb_context(), seed in prop::collection::vec(-20i64..20, 8)) {
            let k = ctx.rank();
            let a = &seed[..k];
            let b = &seed[4..4 + k];
            prop_assert_eq!(ctx.tits(a, b).unwrap(), ctx.tits(b, a).unwrap());
            prop_assert_eq!(ctx.tits(a, b).unwrap(), ctx.chi(a, b).unwrap() + ctx.chi(b, a).unwrap());
            for i in 0..k {
                prop_assert_eq!(ctx.euler_matrix()[i][i], 1 - ctx.quiver().loops_at(i) as i64);
                for j in 0..k {
                    if i != j {
                        prop_assert!(ctx.tits_matrix()[i][j] <= 0);
                    }
                }
            }
        }

        #[test]
        fn reflections_are_orthogonal_involutions(ctx in arb_context(), seed in prop::collection::vec(-20i64..20, 8)) {
            let k = ctx.rank();
            let a = &seed[..k];
            let b = &seed[4..4 + k];
            for i in (0..k).filter(|&i| ctx.is_loop_free(i)) {
                let sa = ctx.reflect(i, a).unwrap();
                let sb = ctx.reflect(i, b).unwrap();
                prop_assert_eq!(ctx.tits(&sa, &sb).unwrap(), ctx.tits(a, b).unwrap());
                let back = ctx.reflect(i, &sa).unwrap();
                prop_assert_eq!(back, a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
            }
        }
    }
}
