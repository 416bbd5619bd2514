use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{SigmaError, SigmaQuery, SigmaSolver};
use crate::quiver::DimVector;

/// A semisimple representation type `(e_1, beta_1; ...; e_u, beta_u)`.
///
/// Parts are kept sorted by decreasing `beta`, then by decreasing
/// multiplicity. The same
/// `beta` may appear in several parts (distinct simples sharing a dimension
/// vector) only when `p(beta) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepType {
    parts: Vec<(u64, DimVector)>,
}

impl RepType {
    pub fn new(mut parts: Vec<(u64, DimVector)>) -> Self {
        parts.sort_by(|(e1, b1), (e2, b2)| b2.cmp(b1).then(e2.cmp(e1)));
        RepType { parts }
    }

    /// The Azumaya type `(1, alpha)`.
    pub fn simple(alpha: &DimVector) -> Self {
        RepType::new(vec![(1, alpha.clone())])
    }

    pub fn parts(&self) -> &[(u64, DimVector)] {
        &self.parts
    }

    pub fn is_simple(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].0 == 1
    }

    /// `sum e_i beta_i`.
    pub fn total(&self) -> Option<DimVector> {
        let (_, first) = self.parts.first()?;
        Some(
            self.parts
                .iter()
                .fold(DimVector::zero(first.len()), |acc, (e, b)| acc.add(&b.scale(*e))),
        )
    }

    /// Checks the type against a query: multiplicities positive, parts in
    /// Sigma_lambda, total alpha, real parts unrepeated.
    pub(crate) fn validate(&self, q: &SigmaQuery, solver: &SigmaSolver) -> Result<(), SigmaError> {
        let invalid = |msg: String| Err(SigmaError::InvalidType(format!("{self}: {msg}")));
        if self.parts.is_empty() {
            return invalid("no parts".into());
        }
        for (e, b) in &self.parts {
            if b.len() != q.alpha().len() {
                return invalid(format!("{b} has the wrong length"));
            }
            if *e == 0 {
                return invalid("zero multiplicity".into());
            }
            if !solver.in_sigma(b) {
                return invalid(format!("{b} is not in Sigma_lambda"));
            }
        }
        if self.total().as_ref() != Some(q.alpha()) {
            return invalid(format!("parts do not add up to {}", q.alpha()));
        }
        for w in self.parts.windows(2) {
            if w[0].1 == w[1].1 && solver.p(&w[0].1).is_zero() {
                return invalid(format!("{} supports a unique simple", w[0].1));
            }
        }
        Ok(())
    }

    /// Stratum dimension `sum_i 2 p(beta_i)`.
    pub(crate) fn stratum_dimension(&self, solver: &SigmaSolver) -> BigInt {
        self.parts.iter().map(|(_, b)| solver.p(b) * 2).sum()
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (e, b)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{e},{b}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for RepType {
    type Err = SigmaError;

    /// Reads the `Display` form, e.g. `(2,(1,0);1,(0,1))`. Whitespace is
    /// ignored.
    fn from_str(text: &str) -> Result<Self, SigmaError> {
        let bad = || SigmaError::InvalidType(format!("cannot read representation type {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut parts = Vec::new();
        for part in inner.split(';') {
            let (e, beta) = part.split_once(',').ok_or_else(bad)?;
            let e: u64 = e.parse().map_err(|_| bad())?;
            let beta = beta
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            let beta = beta
                .split(',')
                .map(|x| x.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            parts.push((e, DimVector(beta)));
        }
        Ok(RepType::new(parts))
    }
}

/// Partitions of `n` into parts `<= max`, largest part first.
fn partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Ways to write `rest` as `sum m_i * sigma[i]` with `i >= from`.
fn multiplicities(
    sigma: &[DimVector],
    from: usize,
    rest: &DimVector,
    chosen: &mut Vec<(usize, u64)>,
    out: &mut Vec<Vec<(usize, u64)>>,
) {
    if rest.is_zero() {
        out.push(chosen.clone());
        return;
    }
    for i in from..sigma.len() {
        let mut remaining = rest.clone();
        let mut m = 0;
        while let Some(next) = remaining.checked_sub(&sigma[i]) {
            m += 1;
            chosen.push((i, m));
            multiplicities(sigma, i + 1, &next, chosen, out);
            chosen.pop();
            remaining = next;
        }
    }
}

pub(crate) fn types_with(solver: &SigmaSolver, alpha: &DimVector) -> Vec<(RepType, BigInt)> {
    if alpha.is_zero() {
        return Vec::new();
    }
    let sigma = solver.sigma_below(alpha);
    let mut choices = Vec::new();
    multiplicities(&sigma, 0, alpha, &mut Vec::new(), &mut choices);

    let mut types = Vec::new();
    for choice in choices {
        // expand every beta's total multiplicity into its possible splittings
        let mut partial: Vec<Vec<(u64, DimVector)>> = vec![Vec::new()];
        for (i, m) in choice {
            let beta = &sigma[i];
            let splits = if solver.p(beta).is_zero() {
                vec![vec![m]]
            } else {
                partitions(m, m)
            };
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    splits.iter().map(move |split| {
                        let mut parts = prefix.clone();
                        parts.extend(split.iter().map(|&e| (e, beta.clone())));
                        parts
                    })
                })
                .collect();
        }
        types.extend(partial.into_iter().map(RepType::new));
    }
    let mut annotated: Vec<(RepType, BigInt)> = types
        .into_iter()
        .map(|t| {
            let d = t.stratum_dimension(solver);
            (t, d)
        })
        .collect();
    annotated.sort_by(|(t1, d1), (t2, d2)| d2.cmp(d1).then_with(|| t1.cmp(t2)));
    annotated
}

/// Every representation type of dimension `alpha`, with its stratum
/// dimension, sorted by decreasing dimension.
pub fn enumerate_types(q: &SigmaQuery) -> Vec<(RepType, BigInt)> {
    types_with(&SigmaSolver::for_query(q, None), q.alpha())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Quiver, Weights};

    fn query(q: Quiver, lambda: &[i64], alpha: &[u64]) -> SigmaQuery {
        SigmaQuery::new(q, Weights::from_integers(lambda), DimVector(alpha.to_vec())).unwrap()
    }

    fn d(v: &[u64]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn parse_display_round_trip() {
        for text in ["(1,(2))", "(1,(1);1,(1))", "(2,(1,0);1,(0,1))"] {
            assert_eq!(text.parse::<RepType>().unwrap().to_string(), text);
        }
        assert_eq!(
            " ( 1,(0,1) ; 2,(1,0) ) ".parse::<RepType>().unwrap().to_string(),
            "(2,(1,0);1,(0,1))"
        );
        for bad in ["", "()", "(1)", "(x,(1))", "(1,(1)", "(1,(1,));"] {
            assert!(bad.parse::<RepType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn partitions_of_small_numbers() {
        assert_eq!(partitions(3, 3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(4, 4).len(), 5);
    }

    #[test]
    fn two_loop_quiver() {
        let q = query(Quiver::from_indices(1, &[(0, 0), (0, 0)]), &[0], &[2]);
        let types = enumerate_types(&q);
        let labels: Vec<String> = types.iter().map(|(t, _)| t.to_string()).collect();
        assert_eq!(labels, ["(1,(2))", "(1,(1);1,(1))", "(2,(1))"]);
        let dims: Vec<i64> = types.iter().map(|(_, d)| d.try_into().unwrap()).collect();
        assert_eq!(dims, [10, 8, 4]);
    }

    #[test]
    fn calogero_moser_single_type() {
        let q = query(Quiver::from_indices(2, &[(0, 0), (1, 0)]), &[1, -2], &[2, 1]);
        let types = enumerate_types(&q);
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].0, RepType::simple(&d(&[2, 1])));
        assert_eq!(types[0].1, BigInt::from(4));
    }

    #[test]
    fn zero_alpha_has_no_types() {
        let q = query(Quiver::from_indices(1, &[(0, 0)]), &[0], &[0]);
        assert!(enumerate_types(&q).is_empty());
    }

    #[test]
    fn real_roots_are_not_split() {
        // A_2 with lambda = 0, alpha = (2,1): only (2,e_1;1,e_2)
        let q = query(Quiver::from_indices(2, &[(0, 1)]), &[0, 0], &[2, 1]);
        let types = enumerate_types(&q);
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].0.to_string(), "(2,(1,0);1,(0,1))");
        assert_eq!(types[0].1, BigInt::from(0));
    }

    #[test]
    fn validation() {
        let q = query(Quiver::from_indices(1, &[(0, 0), (0, 0)]), &[0], &[2]);
        let solver = SigmaSolver::for_query(&q, None);
        assert!(RepType::new(vec![(1, d(&[1])), (1, d(&[1]))])
            .validate(&q, &solver)
            .is_ok());
        assert!(RepType::new(vec![(1, d(&[1]))]).validate(&q, &solver).is_err());
        assert!(RepType::new(vec![(0, d(&[2]))]).validate(&q, &solver).is_err());
        assert!(RepType::new(vec![]).validate(&q, &solver).is_err());

        let a2 = query(Quiver::from_indices(2, &[(0, 1)]), &[0, 0], &[2, 1]);
        let solver = SigmaSolver::for_query(&a2, None);
        let repeated_real = RepType::new(vec![(1, d(&[1, 0])), (1, d(&[1, 0])), (1, d(&[0, 1]))]);
        assert!(repeated_real.validate(&a2, &solver).is_err());
    }
}
