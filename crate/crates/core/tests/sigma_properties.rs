use num_bigint::BigInt;
use proptest::prelude::*;
use quiverlab_core::forms::enumerate_roots;
use quiverlab_core::sigma::{decide, enumerate_sigma, enumerate_types, in_sigma, is_minimal, local_quiver};
use quiverlab_core::{DimVector, FormsContext, Quiver, RepType, SigmaQuery, Weights};

/// Small quiver, nonzero `alpha` and weights with `lambda . alpha = 0`.
fn arb_query() -> impl Strategy<Value = SigmaQuery> {
    (1usize..=3)
        .prop_flat_map(|k| {
            (
                Just(k),
                prop::collection::vec((0..k, 0..k), 0..=4),
                prop::collection::vec(0u64..=2, k),
                prop::collection::vec(-2i64..=2, k),
                any::<bool>(),
            )
        })
        .prop_filter("alpha must be nonzero", |(_, _, alpha, _, _)| {
            alpha.iter().any(|&a| a > 0)
        })
        .prop_map(|(k, arrows, alpha, mut lambda, zero_weight)| {
            if zero_weight {
                lambda = vec![0; k];
            } else {
                // move the imbalance onto a vertex with alpha = 1, or give up
                let dot: i64 = lambda.iter().zip(&alpha).map(|(l, &a)| l * a as i64).sum();
                match alpha.iter().position(|&a| a == 1) {
                    Some(i) => lambda[i] -= dot,
                    None if dot != 0 => lambda = vec![0; k],
                    None => {}
                }
            }
            SigmaQuery::new(
                Quiver::from_indices(k, &arrows),
                Weights::from_integers(&lambda),
                DimVector(alpha),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn local_quivers_preserve_p(q in arb_query()) {
        let p_alpha = FormsContext::new(q.quiver()).p(q.alpha()).unwrap();
        for (t, _) in enumerate_types(&q) {
            let local = local_quiver(&q, &t).unwrap();
            let base = local.gamma.base();
            prop_assert_eq!(FormsContext::new(base).p(&local.alpha).unwrap(), p_alpha.clone());
            for i in 0..base.vertex_count() {
                let beta = &t.parts()[i].1;
                let p_beta = FormsContext::new(q.quiver()).p(beta).unwrap();
                prop_assert_eq!(BigInt::from(base.loops_at(i)), p_beta);
            }
        }
    }

    #[test]
    fn azumaya_stratum(q in arb_query()) {
        let types = enumerate_types(&q);
        let simple = RepType::simple(q.alpha());
        let found = types.iter().find(|(t, _)| *t == simple);
        prop_assert_eq!(found.is_some(), in_sigma(&q, q.alpha()).unwrap());
        if let Some((_, dim)) = found {
            prop_assert_eq!(dim.clone(), FormsContext::new(q.quiver()).p(q.alpha()).unwrap() * 2);
        }
    }

    #[test]
    fn minimal_means_one_simple_type(q in arb_query()) {
        if in_sigma(&q, q.alpha()).unwrap() && is_minimal(&q).unwrap() {
            let types: Vec<RepType> = enumerate_types(&q).into_iter().map(|(t, _)| t).collect();
            prop_assert_eq!(types, vec![RepType::simple(q.alpha())]);
        }
    }

    #[test]
    fn sigma_members_are_roots(q in arb_query()) {
        let roots = enumerate_roots(&FormsContext::new(q.quiver()), q.bound());
        for beta in enumerate_sigma(&q) {
            prop_assert!(roots.contains(&beta), "{} is not a root", beta);
            prop_assert!(q.lambda().dot(&beta) == num_rational::BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn decide_is_deterministic_and_consistent(q in arb_query()) {
        let r = decide(&q).unwrap();
        prop_assert_eq!(&r, &decide(&q).unwrap());
        prop_assert_eq!(r.to_json().to_string(), decide(&q).unwrap().to_json().to_string());
        for flag in [r.coadjoint_orbit, r.smooth_quotient, r.azumaya, r.alpha_smooth] {
            prop_assert_eq!(flag, r.minimal);
        }
        prop_assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        prop_assert!(r.strata.windows(2).all(|w| w[0].dimension >= w[1].dimension));
    }
}
