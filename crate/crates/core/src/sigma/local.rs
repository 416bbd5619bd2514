use num_traits::{Signed, ToPrimitive};

use super::{RepType, SigmaError, SigmaQuery, SigmaSolver};
use crate::quiver::{DimVector, DoubleQuiver, Quiver};

/// The local quiver of a representation type together with `alpha_tau`.
///
/// `gamma` is stored as a double: its base has `p(beta_i)` loops at vertex
/// `i` and `-T(beta_i, beta_j)` arrows `i -> j` for `i < j`, so the double
/// carries `2 p(beta_i)` loops and `-2 T(beta_i, beta_j)` arrows between
/// each pair of vertices. The Ext-quiver of the type is the same object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalQuiverSetting {
    pub gamma: DoubleQuiver,
    pub alpha: DimVector,
}

pub(crate) fn local_with(
    solver: &SigmaSolver,
    q: &SigmaQuery,
    tau: &RepType,
) -> Result<LocalQuiverSetting, SigmaError> {
    tau.validate(q, solver)?;
    let parts = tau.parts();
    let u = parts.len();
    let forms = solver.forms();
    let vertices: Vec<String> = (1..=u).map(|i| format!("v'{i}")).collect();
    let mut arrows = Vec::new();
    for (i, (_, beta)) in parts.iter().enumerate() {
        let loops = solver
            .p(beta)
            .to_usize()
            .expect("p of a root in Sigma is small and nonnegative");
        for k in 0..loops {
            arrows.push((
                format!("l{}_{}", i + 1, k + 1),
                vertices[i].clone(),
                vertices[i].clone(),
            ));
        }
    }
    for i in 0..u {
        for j in i + 1..u {
            let t = forms.tits(&parts[i].1, &parts[j].1).expect("length checked");
            if t.is_positive() {
                return Err(SigmaError::InvalidType(format!(
                    "{tau}: T({}, {}) = {t} is positive",
                    parts[i].1, parts[j].1
                )));
            }
            let count = (-t).to_usize().expect("arrow count fits in memory");
            for k in 0..count {
                arrows.push((
                    format!("b{}_{}_{}", i + 1, j + 1, k + 1),
                    vertices[i].clone(),
                    vertices[j].clone(),
                ));
            }
        }
    }
    let base = Quiver::new(vertices, arrows).expect("generated identifiers are unique");
    Ok(LocalQuiverSetting {
        gamma: base.double(),
        alpha: DimVector(parts.iter().map(|(e, _)| *e).collect()),
    })
}

/// Local quiver setting `(Gamma_tau, alpha_tau)` of a representation type.
pub fn local_quiver(q: &SigmaQuery, tau: &RepType) -> Result<LocalQuiverSetting, SigmaError> {
    local_with(&SigmaSolver::for_query(q, None), q, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormsContext;
    use crate::quiver::Weights;
    use num_bigint::BigInt;

    fn d(v: &[u64]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn double_loops(dq: &DoubleQuiver, v: usize) -> usize {
        (0..dq.arrow_count())
            .filter(|&c| dq.tail(c) == v && dq.head(c) == v)
            .count()
    }

    fn double_edges(dq: &DoubleQuiver, v: usize, w: usize) -> usize {
        (0..dq.arrow_count())
            .filter(|&c| (dq.tail(c), dq.head(c)) == (v, w) || (dq.tail(c), dq.head(c)) == (w, v))
            .count()
    }

    #[test]
    fn two_loop_split_type() {
        let q = SigmaQuery::new(Quiver::from_indices(1, &[(0, 0), (0, 0)]), Weights::zero(1), d(&[2])).unwrap();
        let tau = RepType::new(vec![(1, d(&[1])), (1, d(&[1]))]);
        let setting = local_quiver(&q, &tau).unwrap();
        let base = setting.gamma.base();
        assert_eq!(base.vertex_count(), 2);
        assert_eq!(base.loops_at(0), 2);
        assert_eq!(base.loops_at(1), 2);
        assert_eq!(base.arrows_between(0, 1), 2);
        assert_eq!(base.arrows_between(1, 0), 0);
        assert_eq!(double_loops(&setting.gamma, 0), 4);
        assert_eq!(double_edges(&setting.gamma, 0, 1), 4);
        assert_eq!(setting.alpha, d(&[1, 1]));
        let p_local = FormsContext::new(base).p(&setting.alpha).unwrap();
        assert_eq!(p_local, BigInt::from(5));
        assert_eq!(FormsContext::new(q.quiver()).p(&[2u64]).unwrap(), BigInt::from(5));
    }

    #[test]
    fn azumaya_type_is_a_bouquet() {
        let q = SigmaQuery::new(
            Quiver::from_indices(2, &[(0, 0), (1, 0)]),
            Weights::from_integers(&[1, -2]),
            d(&[2, 1]),
        )
        .unwrap();
        let setting = local_quiver(&q, &RepType::simple(&d(&[2, 1]))).unwrap();
        assert_eq!(setting.gamma.base().vertex_count(), 1);
        assert_eq!(setting.gamma.base().loops_at(0), 2);
        assert_eq!(setting.alpha, d(&[1]));
    }

    #[test]
    fn calogero_moser_at_zero_weight() {
        let q = SigmaQuery::new(Quiver::from_indices(2, &[(0, 0), (1, 0)]), Weights::zero(2), d(&[2, 1])).unwrap();
        let tau = RepType::new(vec![(2, d(&[1, 0])), (1, d(&[0, 1]))]);
        let setting = local_quiver(&q, &tau).unwrap();
        let base = setting.gamma.base();
        assert_eq!(setting.alpha, d(&[2, 1]));
        assert_eq!(base.loops_at(0), 1);
        assert_eq!(base.loops_at(1), 0);
        assert_eq!(base.arrows_between(0, 1), 1);
        assert_eq!(base.arrow_count(), 2);
    }

    #[test]
    fn rejects_invalid_types() {
        let q = SigmaQuery::new(Quiver::from_indices(1, &[(0, 0)]), Weights::zero(1), d(&[2])).unwrap();
        assert!(matches!(
            local_quiver(&q, &RepType::simple(&d(&[2]))),
            Err(SigmaError::InvalidType(_))
        ));
    }
}
