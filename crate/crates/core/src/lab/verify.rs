use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{endomorphism_dimension, jacobian_rank, newton_sample, LabError, NewtonConfig};
use crate::sigma::{decide, SigmaQuery};

/// Numerical witness for the smoothness verdict at sampled points of the
/// fibre. Rank deficiency at a sample is not a proof of singularity.
#[derive(Debug, Clone, PartialEq)]
pub struct LabReport {
    pub seed: u64,
    pub samples: usize,
    pub failures: usize,
    /// Largest residual among accepted samples.
    pub residual: f64,
    pub ambient_dimension: usize,
    /// Largest rank seen across samples (the generic rank).
    pub jacobian_rank: usize,
    /// `sum alpha_i^2 - 1`.
    pub expected_rank: usize,
    pub fiber_dimension: usize,
    /// Smallest endomorphism dimension seen across samples.
    pub endomorphism_dimension: usize,
    pub simple: bool,
    pub quotient_dimension_estimate: i64,
    /// `2 p(alpha)` when alpha lies in Sigma_lambda.
    pub expected_quotient_dimension: Option<BigInt>,
    /// Whether the samples agree with a minimal verdict: full rank and a
    /// quotient estimate of `2 p(alpha)`. `None` unless alpha is minimal.
    pub consistent: Option<bool>,
}

impl LabReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "witness",
            "seed": self.seed,
            "samples": self.samples,
            "failures": self.failures,
            "residual": self.residual,
            "ambientDimension": self.ambient_dimension,
            "jacobianRank": self.jacobian_rank,
            "expectedRank": self.expected_rank,
            "fiberDimension": self.fiber_dimension,
            "endomorphismDimension": self.endomorphism_dimension,
            "simple": self.simple,
            "quotientDimensionEstimate": self.quotient_dimension_estimate,
            "expectedQuotientDimension": self.expected_quotient_dimension.as_ref().map_or(Value::Null, crate::sigma::int_json),
            "consistent": self.consistent,
        })
    }
}

/// Samples `trials` points of the fibre over `lambda` and measures the
/// differential rank and endomorphism dimension at each.
pub fn verify(q: &SigmaQuery, seed: u64, trials: usize, tol: f64) -> Result<LabReport, LabError> {
    let alpha = q.alpha();
    if !q.lambda().dot(alpha).is_zero() {
        return Err(LabError::TraceObstruction);
    }
    let decision = decide(q)?;
    let dq = q.quiver().double();
    let config = NewtonConfig::default();

    let mut samples = 0;
    let mut failures = 0;
    let mut residual: f64 = 0.0;
    let mut rank = 0;
    let mut endo = usize::MAX;
    let mut ambient = 0;
    let mut last_error = None;
    for t in 0..trials.max(1) {
        match newton_sample(&dq, alpha, q.lambda(), seed.wrapping_add(t as u64), &config) {
            Ok(outcome) => {
                samples += 1;
                residual = residual.max(outcome.residual);
                ambient = outcome.point.ambient_dimension();
                rank = rank.max(jacobian_rank(&dq, &outcome.point, tol)?);
                endo = endo.min(endomorphism_dimension(&dq, &outcome.point, tol)?);
            }
            Err(e @ LabError::NoConvergence { .. }) => {
                failures += 1;
                last_error = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    if samples == 0 {
        return Err(last_error.expect("at least one trial ran"));
    }

    let expected_rank = (alpha.iter().map(|&a| a * a).sum::<u64>() - 1) as usize;
    let fiber_dimension = ambient - rank;
    let quotient_dimension_estimate = fiber_dimension as i64 - expected_rank as i64;
    let expected_quotient_dimension = decision.dimension.clone();
    let consistent = decision.minimal.then(|| {
        rank == expected_rank
            && expected_quotient_dimension.as_ref().and_then(ToPrimitive::to_i64) == Some(quotient_dimension_estimate)
    });
    Ok(LabReport {
        seed,
        samples,
        failures,
        residual,
        ambient_dimension: ambient,
        jacobian_rank: rank,
        expected_rank,
        fiber_dimension,
        endomorphism_dimension: endo,
        simple: endo == 1,
        quotient_dimension_estimate,
        expected_quotient_dimension,
        consistent,
    })
}
