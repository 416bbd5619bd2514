//! Dimension vectors of simple representations of a deformed preprojective
//! algebra, representation types, local quivers and the smoothness decision.
//!
//! Membership uses the standard decomposition criterion: `beta` is a positive root
//! with `lambda . beta = 0` and `p(beta) > sum p(beta_t)` for every splitting
//! of `beta` into at least two positive roots that are each orthogonal to
//! `lambda`. Splittings are searched exhaustively over the roots in the box,
//! memoized on the remainder.

mod decide;
mod local;
mod types;

pub use decide::{decide, int_json, rep_type_json, DecisionReport, Stratum};
pub use local::{local_quiver, LocalQuiverSetting};
pub use types::{enumerate_types, RepType};

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::forms::{enumerate_roots, FormsContext};
use crate::quiver::{DimVector, Quiver, QuiverError, Weights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("lambda·alpha ≠ 0")]
    TraceObstruction,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("{0} is not in Sigma_lambda")]
    NotInSigma(DimVector),
    #[error("invalid representation type: {0}")]
    InvalidType(String),
}

/// A quiver, weights, target dimension vector and search box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaQuery {
    quiver: Quiver,
    lambda: Weights,
    alpha: DimVector,
    bound: DimVector,
}

impl SigmaQuery {
    /// Query with the default box `alpha`.
    pub fn new(quiver: Quiver, lambda: Weights, alpha: DimVector) -> Result<Self, SigmaError> {
        lambda.check_len(quiver.vertex_count())?;
        alpha.check_len(quiver.vertex_count())?;
        Ok(SigmaQuery {
            quiver,
            lambda,
            bound: alpha.clone(),
            alpha,
        })
    }

    pub fn with_box(mut self, bound: DimVector) -> Result<Self, SigmaError> {
        bound.check_len(self.quiver.vertex_count())?;
        self.bound = bound;
        Ok(self)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn lambda(&self) -> &Weights {
        &self.lambda
    }

    pub fn alpha(&self) -> &DimVector {
        &self.alpha
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }
}

fn join_max(a: &DimVector, b: &DimVector) -> DimVector {
    DimVector(a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).collect())
}

/// Roots and memoized splitting data for one quiver and weight vector.
pub(crate) struct SigmaSolver {
    forms: FormsContext,
    /// Roots orthogonal to lambda, with their p-values.
    balanced: Vec<(DimVector, BigInt)>,
    best: RefCell<HashMap<DimVector, Option<BigInt>>>,
    verdicts: RefCell<HashMap<DimVector, bool>>,
}

impl SigmaSolver {
    pub(crate) fn new(quiver: &Quiver, lambda: &Weights, bound: &DimVector) -> Self {
        let forms = FormsContext::new(quiver);
        let roots = enumerate_roots(&forms, bound);
        let balanced = roots
            .iter()
            .filter(|(v, _)| lambda.dot(v).is_zero())
            .map(|(v, _)| (v.clone(), forms.p(v).expect("length checked")))
            .collect();
        SigmaSolver {
            forms,
            balanced,
            best: RefCell::new(HashMap::new()),
            verdicts: RefCell::new(HashMap::new()),
        }
    }

    pub(crate) fn for_query(q: &SigmaQuery, extra: Option<&DimVector>) -> Self {
        let mut bound = join_max(&q.bound, &q.alpha);
        if let Some(e) = extra {
            bound = join_max(&bound, e);
        }
        Self::new(&q.quiver, &q.lambda, &bound)
    }

    pub(crate) fn forms(&self) -> &FormsContext {
        &self.forms
    }

    pub(crate) fn p(&self, v: &DimVector) -> BigInt {
        self.forms.p(v).expect("length checked")
    }

    /// Largest `sum p(beta_t)` over splittings of `v` into one or more
    /// balanced roots; `None` when there is none.
    fn best_split(&self, v: &DimVector) -> Option<BigInt> {
        if v.is_zero() {
            return Some(BigInt::zero());
        }
        if let Some(hit) = self.best.borrow().get(v) {
            return hit.clone();
        }
        let result = self
            .balanced
            .iter()
            .filter_map(|(r, p)| {
                let rest = v.checked_sub(r)?;
                self.best_split(&rest).map(|b| b + p)
            })
            .max();
        self.best.borrow_mut().insert(v.clone(), result.clone());
        result
    }

    /// Largest `sum p(beta_t)` over splittings into at least two parts.
    fn best_proper_split(&self, v: &DimVector) -> Option<BigInt> {
        self.balanced
            .iter()
            .filter(|(r, _)| r != v)
            .filter_map(|(r, p)| {
                let rest = v.checked_sub(r)?;
                self.best_split(&rest).map(|b| b + p)
            })
            .max()
    }

    pub(crate) fn in_sigma(&self, v: &DimVector) -> bool {
        if let Some(&hit) = self.verdicts.borrow().get(v) {
            return hit;
        }
        let verdict = match self.balanced.iter().find(|(r, _)| r == v) {
            None => false,
            Some((_, p)) => match self.best_proper_split(v) {
                None => true,
                Some(split) => *p > split,
            },
        };
        self.verdicts.borrow_mut().insert(v.clone(), verdict);
        verdict
    }

    /// All nonzero members of Sigma_lambda that are `<= bound`, sorted.
    pub(crate) fn sigma_below(&self, bound: &DimVector) -> Vec<DimVector> {
        bound
            .sub_vectors()
            .into_iter()
            .filter(|v| !v.is_zero() && self.in_sigma(v))
            .collect()
    }
}

/// True when `beta` is the dimension vector of a simple representation.
pub fn in_sigma(q: &SigmaQuery, beta: &DimVector) -> Result<bool, SigmaError> {
    beta.check_len(q.quiver.vertex_count())?;
    Ok(SigmaSolver::for_query(q, Some(beta)).in_sigma(beta))
}

/// Members of Sigma_lambda inside the query box, in lexicographic order.
pub fn enumerate_sigma(q: &SigmaQuery) -> Vec<DimVector> {
    SigmaSolver::for_query(q, None).sigma_below(&q.bound)
}

/// True when no nonzero `beta < alpha` lies in Sigma_lambda.
pub fn is_minimal(q: &SigmaQuery) -> Result<bool, SigmaError> {
    let solver = SigmaSolver::for_query(q, None);
    minimal_with(&solver, &q.alpha)
}

pub(crate) fn minimal_with(solver: &SigmaSolver, alpha: &DimVector) -> Result<bool, SigmaError> {
    if !solver.in_sigma(alpha) {
        return Err(SigmaError::NotInSigma(alpha.clone()));
    }
    Ok(!alpha
        .sub_vectors()
        .iter()
        .any(|b| !b.is_zero() && b != alpha && solver.in_sigma(b)))
}
