use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::types::types_with;
use super::{minimal_with, RepType, SigmaError, SigmaQuery, SigmaSolver};

/// One stratum of the quotient: a representation type, its dimension and
/// whether the quotient is smooth along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub rep_type: RepType,
    pub dimension: BigInt,
    pub smooth: bool,
}

/// Verdict on the five equivalent conditions for `(Q, lambda, alpha)`.
///
/// The five condition flags always agree; they are all `minimal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub in_sigma: bool,
    pub minimal: bool,
    pub coadjoint_orbit: bool,
    pub smooth_quotient: bool,
    pub azumaya: bool,
    pub alpha_smooth: bool,
    /// `2 p(alpha)` when `alpha` lies in Sigma_lambda.
    pub dimension: Option<BigInt>,
    pub strata: Vec<Stratum>,
    pub warnings: Vec<String>,
}

pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

pub fn rep_type_json(t: &RepType) -> Value {
    Value::Array(
        t.parts()
            .iter()
            .map(|(e, b)| json!({ "multiplicity": e, "beta": b.0 }))
            .collect(),
    )
}

impl DecisionReport {
    /// `{inSigma, minimal, coadjointOrbit, smoothQuotient, azumaya,
    /// alphaSmooth, dimension, strata: [{type, label, dimension, smooth}],
    /// warnings}`.
    pub fn to_json(&self) -> Value {
        json!({
            "inSigma": self.in_sigma,
            "minimal": self.minimal,
            "coadjointOrbit": self.coadjoint_orbit,
            "smoothQuotient": self.smooth_quotient,
            "azumaya": self.azumaya,
            "alphaSmooth": self.alpha_smooth,
            "dimension": self.dimension.as_ref().map_or(Value::Null, int_json),
            "strata": self.strata.iter().map(|s| json!({
                "type": rep_type_json(&s.rep_type),
                "label": s.rep_type.to_string(),
                "dimension": int_json(&s.dimension),
                "smooth": s.smooth,
            })).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

/// Decides minimality of `alpha` in Sigma_lambda and with it the four
/// equivalent geometric conditions, and lists the strata of the quotient.
pub fn decide(q: &SigmaQuery) -> Result<DecisionReport, SigmaError> {
    let alpha = q.alpha();
    if alpha.is_zero() {
        return Err(SigmaError::ZeroAlpha);
    }
    if !q.lambda().dot(alpha).is_zero() {
        return Err(SigmaError::TraceObstruction);
    }
    let solver = SigmaSolver::for_query(q, None);
    let in_sigma = solver.in_sigma(alpha);
    let minimal = in_sigma && minimal_with(&solver, alpha)?;
    let strata: Vec<Stratum> = types_with(&solver, alpha)
        .into_iter()
        .map(|(rep_type, dimension)| Stratum {
            smooth: rep_type.is_simple(),
            rep_type,
            dimension,
        })
        .collect();

    let mut warnings = Vec::new();
    let single_simple_stratum = strata.len() == 1 && strata[0].smooth;
    if minimal != single_simple_stratum {
        warnings.push(format!(
            "poset-minimality ({minimal}) disagrees with the all-simple criterion ({single_simple_stratum})"
        ));
    }

    Ok(DecisionReport {
        in_sigma,
        minimal,
        coadjoint_orbit: minimal,
        smooth_quotient: minimal,
        azumaya: minimal,
        alpha_smooth: minimal,
        dimension: in_sigma.then(|| solver.p(alpha) * 2),
        strata,
        warnings,
    })
}
