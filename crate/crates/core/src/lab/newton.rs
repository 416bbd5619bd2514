//! Damped Gauss-Newton sampling of a moment-map fibre.

use num_complex::Complex64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::linalg::to_nalgebra;
use super::{jacobian_unchecked, moment_unchecked, LabError, MomentValue, RepPoint};
use crate::quiver::{DimVector, DoubleQuiver, Weights};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    pub max_iterations: usize,
    pub restarts: usize,
    /// Target Frobenius norm of `mu(V) - lambda`.
    pub tolerance: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            max_iterations: 100,
            restarts: 20,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome {
    pub point: RepPoint<Complex64>,
    pub residual: f64,
    /// Index of the restart that converged.
    pub restart: usize,
    pub iterations: usize,
}

fn residual_of(dq: &DoubleQuiver, v: &RepPoint<Complex64>, target: &MomentValue<Complex64>) -> (Vec<Complex64>, f64) {
    let r = moment_unchecked(dq, v).minus(target);
    let norm = r.norm();
    (r.entries(), norm)
}

/// Runs Gauss-Newton from `start`. Returns the final point, its residual
/// and the number of iterations used.
pub fn newton_from(
    dq: &DoubleQuiver,
    lambda: &Weights,
    start: RepPoint<Complex64>,
    config: &NewtonConfig,
) -> (RepPoint<Complex64>, f64, usize) {
    let target = MomentValue::scalar(start.alpha(), lambda);
    let mut point = start;
    let (mut r, mut res) = residual_of(dq, &point, &target);
    let mut iterations = 0;
    while iterations < config.max_iterations && res > config.tolerance {
        iterations += 1;
        let jac = to_nalgebra(&jacobian_unchecked(dq, &point));
        if jac.ncols() == 0 {
            break;
        }
        let svd = jac.svd(true, true);
        let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let rhs = nalgebra::DVector::from_vec(r.clone());
        let Ok(step) = svd.solve(&rhs, 1e-12 * largest.max(1.0)) else {
            break;
        };
        let step: Vec<Complex64> = step.iter().map(|s| -s).collect();
        let direction = RepPoint::from_coordinates(dq, point.alpha(), &step).expect("shapes match");

        let mut damping = 1.0;
        let mut accepted = false;
        while damping > 1e-10 {
            let trial = point.plus(&direction.scaled(&Complex64::new(damping, 0.0)));
            let (trial_r, trial_res) = residual_of(dq, &trial, &target);
            if trial_res < res {
                point = trial;
                r = trial_r;
                res = trial_res;
                accepted = true;
                break;
            }
            damping /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    (point, res, iterations)
}

/// Seeded Gaussian start for restart `restart`.
pub(crate) fn gaussian_start(dq: &DoubleQuiver, alpha: &DimVector, seed: u64, restart: usize) -> RepPoint<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let zero = RepPoint::<Complex64>::zero(dq, alpha).expect("alpha checked");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let coords: Vec<Complex64> = (0..zero.ambient_dimension())
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    RepPoint::from_coordinates(dq, alpha, &coords).expect("shapes match")
}

/// Finds a complex point with `||mu(V) - lambda|| <= tolerance`, trying up to
/// `config.restarts` seeded Gaussian starts in order.
pub fn newton_sample(
    dq: &DoubleQuiver,
    alpha: &DimVector,
    lambda: &Weights,
    seed: u64,
    config: &NewtonConfig,
) -> Result<NewtonOutcome, LabError> {
    if alpha.len() != dq.vertex_count() || lambda.len() != dq.vertex_count() {
        return Err(LabError::DimensionMismatch {
            expected: dq.vertex_count(),
            found: alpha.len().min(lambda.len()),
        });
    }
    if !lambda.dot(alpha).is_zero() {
        return Err(LabError::TraceObstruction);
    }
    let mut best = f64::INFINITY;
    for restart in 0..config.restarts {
        let start = gaussian_start(dq, alpha, seed, restart);
        let (point, residual, iterations) = newton_from(dq, lambda, start, config);
        if residual <= config.tolerance {
            return Ok(NewtonOutcome {
                point,
                residual,
                restart,
                iterations,
            });
        }
        best = best.min(residual);
    }
    Err(LabError::NoConvergence {
        restarts: config.restarts,
        best,
        tolerance: config.tolerance,
    })
}
