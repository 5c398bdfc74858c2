//! Omega-limit upper estimation from Lyapunov levels.
//!
//! Along a trajectory every certified linear form converges to some level
//! `lambda_c(x0)`, so the omega-limit set lies in the intersection of the
//! level sets `{psi_c = lambda_c}`. The levels have no known closed form;
//! they are estimated as the stopped value of the monotone sequence,
//! reported together with the last decrement as an error proxy. When the
//! certified rays span the whole space the intersection is a single
//! point, recovered here by least squares over the level equations plus
//! the simplex constraint.

use crate::dynamics::{iterate, DynamicsError, TrajectoryRecord};
use crate::lyapunov::{
    certificate_in_cones, certification_preconditions, LyapunovCertificate, RayBasis,
};
use crate::numerics::{Rational, RationalMatrix};
use crate::operators::{SimplexMap, SqsoPair};
use crate::simplex::SimplexPoint;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Radius used to merge trajectory-tail points into clusters.
pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-6;
/// Tolerance for the resolved point against its level equations and the
/// simplex constraints.
pub const RESOLVE_TOL: f64 = 1e-8;
/// Tolerance for the non-emptiness check of the level-set system.
const FEASIBILITY_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum OmegaError {
    #[error("certificate is not certified for this pair: {0}")]
    Uncertified(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("level-set system is infeasible at the reported tolerances ({0}); this indicates an implementation bug")]
    Infeasible(String),
    #[error("ray has dimension {ray}, operator expects {op}")]
    DimensionMismatch { op: usize, ray: usize },
}

/// When to stop reading Lyapunov values off a trajectory.
#[derive(Debug, Clone)]
pub struct StoppingConfig {
    pub max_steps: usize,
    /// A value decrement below this counts as a plateau step.
    pub decrement_tol: f64,
    /// Consecutive plateau steps required to stop.
    pub patience: usize,
}

impl Default for StoppingConfig {
    fn default() -> Self {
        Self {
            max_steps: 10_000,
            decrement_tol: 1e-13,
            patience: 10,
        }
    }
}

impl StoppingConfig {
    pub fn with_max_steps(max_steps: usize) -> Self {
        Self {
            max_steps,
            ..Self::default()
        }
    }
}

/// A stopped Lyapunov level with its convergence diagnostics. The value
/// is an upper bound on the true limit because the sequence is
/// non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaEstimate {
    pub value: f64,
    pub stop_step: usize,
    pub last_decrement: f64,
    /// True when the plateau criterion was met before the trajectory ran out.
    pub plateaued: bool,
}

/// Level estimate for one extreme ray.
#[derive(Debug, Clone)]
pub struct RayLambda {
    pub ray: Vec<BigInt>,
    pub estimate: LambdaEstimate,
}

/// An affine constraint `psi_c(x) = level` describing the unresolved
/// level-set intersection.
#[derive(Debug, Clone)]
pub struct LevelConstraint {
    pub weights: Vec<BigInt>,
    pub level: f64,
}

/// Upper estimate of the omega-limit set of one trajectory.
#[derive(Debug, Clone)]
pub struct OmegaEstimate {
    pub lambda_values: Vec<RayLambda>,
    /// Exact rank of the matrix with the rays as rows.
    pub ray_matrix_rank: usize,
    /// Present iff the rays span the whole space; then the level
    /// equations pin a unique point.
    pub resolved_point: Option<SimplexPoint>,
    /// Largest absolute residual of the least-squares solve.
    pub solve_residual: Option<f64>,
    /// The level-set description when the rays do not span.
    pub level_set: Vec<LevelConstraint>,
    /// Cluster representatives from the trajectory tail.
    pub empirical_points: Vec<SimplexPoint>,
    /// Number of recorded trajectory points.
    pub trajectory_len: usize,
}

/// Reads the stopped value of a certificate along a recorded trajectory.
/// No certification is checked; use this for exploratory runs.
pub fn lambda_along(
    traj: &TrajectoryRecord,
    cert: &LyapunovCertificate,
    stop: &StoppingConfig,
) -> LambdaEstimate {
    let values = cert.value_series(traj);
    let mut plateau_run = 0usize;
    let mut stop_step = values.len() - 1;
    let mut plateaued = false;
    for n in 1..values.len() {
        if (values[n] - values[n - 1]).abs() < stop.decrement_tol {
            plateau_run += 1;
            if plateau_run >= stop.patience {
                stop_step = n;
                plateaued = true;
                break;
            }
        } else {
            plateau_run = 0;
        }
    }
    let last_decrement = if stop_step == 0 {
        0.0
    } else {
        (values[stop_step - 1] - values[stop_step]).abs()
    };
    LambdaEstimate {
        value: values[stop_step],
        stop_step,
        last_decrement,
        plateaued,
    }
}

/// Estimates `lambda_c(x0)` for a certified certificate: iterates the
/// pair from `x0` and reads the stopped value. Errors when the pair
/// fails the certification preconditions or the certificate lies outside
/// both cones, since the estimate would carry no guarantee.
pub fn estimate_lambda(
    pair: &SqsoPair,
    cert: &LyapunovCertificate,
    x0: &SimplexPoint,
    stop: &StoppingConfig,
) -> Result<LambdaEstimate, OmegaError> {
    require_certified(pair, cert)?;
    let kernel = pair.kernel().map_err(DynamicsError::from)?;
    let traj = shared_trajectory(&kernel, x0, stop)?;
    Ok(lambda_along(&traj, cert, stop))
}

fn require_certified(pair: &SqsoPair, cert: &LyapunovCertificate) -> Result<(), OmegaError> {
    let preconditions = certification_preconditions(pair);
    if !preconditions.certified() {
        return Err(OmegaError::Uncertified(format!(
            "preconditions not met: {preconditions:?}"
        )));
    }
    if !certificate_in_cones(pair, cert) {
        return Err(OmegaError::Uncertified(
            "certificate lies outside both cones".into(),
        ));
    }
    Ok(())
}

fn shared_trajectory<M: SimplexMap + ?Sized>(
    map: &M,
    x0: &SimplexPoint,
    stop: &StoppingConfig,
) -> Result<TrajectoryRecord, OmegaError> {
    // Two orders tighter than the value plateau: certificate weights
    // amplify state deltas, and the level reader must still see its own
    // plateau before the trajectory runs out.
    let conv_tol = (stop.decrement_tol * 1e-2).max(f64::MIN_POSITIVE);
    Ok(iterate(map, x0, stop.max_steps, conv_tol)?)
}

/// Estimates the omega-limit upper set for a certified ray basis: one
/// shared trajectory, one level per ray, and — when the rays span — the
/// resolved intersection point.
pub fn omega_upper_set(
    pair: &SqsoPair,
    rays: &RayBasis,
    x0: &SimplexPoint,
    stop: &StoppingConfig,
) -> Result<OmegaEstimate, OmegaError> {
    let preconditions = certification_preconditions(pair);
    if !preconditions.certified() {
        return Err(OmegaError::Uncertified(format!(
            "preconditions not met: {preconditions:?}"
        )));
    }
    for cert in rays.certificates() {
        if !certificate_in_cones(pair, &cert) {
            return Err(OmegaError::Uncertified(
                "ray basis contains a vector outside both cones".into(),
            ));
        }
    }
    let kernel = pair.kernel().map_err(DynamicsError::from)?;
    omega_upper_set_with(&kernel, rays.rays(), x0, stop)
}

/// Exploratory variant: estimates levels for arbitrary rays along any
/// simplex map, without any certification guarantee.
pub fn omega_upper_set_with<M: SimplexMap + ?Sized>(
    map: &M,
    rays: &[Vec<BigInt>],
    x0: &SimplexPoint,
    stop: &StoppingConfig,
) -> Result<OmegaEstimate, OmegaError> {
    let m = map.dim();
    for ray in rays {
        if ray.len() != m {
            return Err(OmegaError::DimensionMismatch {
                op: m,
                ray: ray.len(),
            });
        }
    }
    let traj = shared_trajectory(map, x0, stop)?;

    let mut lambda_values = Vec::with_capacity(rays.len());
    for ray in rays {
        let cert = LyapunovCertificate::from_ray(ray)
            .map_err(|e| OmegaError::Uncertified(e.to_string()))?;
        let estimate = lambda_along(&traj, &cert, stop);
        lambda_values.push(RayLambda {
            ray: ray.clone(),
            estimate,
        });
    }

    // Non-emptiness guard: the trajectory tail must satisfy every level
    // equation, otherwise the reported system would exclude its own orbit.
    let tail = traj.last_point();
    for rl in &lambda_values {
        let psi = ray_value(&rl.ray, tail.coords());
        if (psi - rl.estimate.value).abs() > feasibility_allowance(&rl.ray) {
            return Err(OmegaError::Infeasible(format!(
                "tail misses level of ray {:?} by {}",
                rl.ray,
                (psi - rl.estimate.value).abs()
            )));
        }
    }

    let ray_matrix_rank = exact_ray_rank(rays, m);
    let mut resolved_point = None;
    let mut solve_residual = None;
    let mut level_set = Vec::new();

    if ray_matrix_rank == m && !rays.is_empty() {
        // Level equations plus the simplex constraint, solved in the
        // least-squares sense (the system is overdetermined by one row).
        let mut rows: Vec<Vec<f64>> = rays
            .iter()
            .map(|ray| ray.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        let mut rhs: Vec<f64> = lambda_values
            .iter()
            .map(|rl| rl.estimate.value)
            .collect();
        rows.push(vec![1.0; m]);
        rhs.push(1.0);
        let solution = least_squares(&rows, &rhs, m)
            .ok_or_else(|| OmegaError::Infeasible("normal equations are singular".into()))?;
        let residual = rows
            .iter()
            .zip(&rhs)
            .map(|(row, &y)| {
                (row.iter().zip(&solution).map(|(a, x)| a * x).sum::<f64>() - y).abs()
            })
            .fold(0.0f64, f64::max);
        let point = SimplexPoint::with_tolerances(solution, RESOLVE_TOL, RESOLVE_TOL)
            .map_err(|e| OmegaError::Infeasible(format!("resolved point invalid: {e}")))?;
        for rl in &lambda_values {
            let psi = ray_value(&rl.ray, point.coords());
            if (psi - rl.estimate.value).abs() > RESOLVE_TOL * scale_of(&rl.ray) {
                return Err(OmegaError::Infeasible(format!(
                    "resolved point misses level of ray {:?}",
                    rl.ray
                )));
            }
        }
        resolved_point = Some(point);
        solve_residual = Some(residual);
    } else {
        level_set = lambda_values
            .iter()
            .map(|rl| LevelConstraint {
                weights: rl.ray.clone(),
                level: rl.estimate.value,
            })
            .collect();
    }

    let tail_len = default_tail(traj.len());
    let empirical_points = empirical_omega(&traj, tail_len, DEFAULT_CLUSTER_RADIUS);

    Ok(OmegaEstimate {
        lambda_values,
        ray_matrix_rank,
        resolved_point,
        solve_residual,
        level_set,
        empirical_points,
        trajectory_len: traj.len(),
    })
}

/// Default tail length for empirical clustering.
pub fn default_tail(trajectory_len: usize) -> usize {
    (trajectory_len / 2).clamp(1, 500)
}

/// Greedy radius clustering of the last `tail` trajectory points. One
/// representative per cluster: a single representative looks like a fixed
/// point, `p` representatives revisited cyclically like a `p`-cycle.
pub fn empirical_omega(
    traj: &TrajectoryRecord,
    tail: usize,
    radius: f64,
) -> Vec<SimplexPoint> {
    let n = traj.len();
    let tail = tail.clamp(1, n);
    let mut representatives: Vec<SimplexPoint> = Vec::new();
    for point in &traj.points()[n - tail..] {
        if representatives
            .iter()
            .all(|rep| rep.l1_distance(point) > radius)
        {
            representatives.push(point.clone());
        }
    }
    representatives
}

fn ray_value(ray: &[BigInt], coords: &[f64]) -> f64 {
    ray.iter()
        .zip(coords)
        .map(|(w, x)| w.to_f64().unwrap_or(f64::NAN) * x)
        .sum()
}

fn scale_of(ray: &[BigInt]) -> f64 {
    ray.iter()
        .map(|w| w.to_f64().unwrap_or(f64::NAN).abs())
        .fold(1.0f64, f64::max)
}

fn feasibility_allowance(ray: &[BigInt]) -> f64 {
    FEASIBILITY_TOL * scale_of(ray)
}

fn exact_ray_rank(rays: &[Vec<BigInt>], m: usize) -> usize {
    if rays.is_empty() {
        return 0;
    }
    let entries: Vec<Rational> = rays
        .iter()
        .flat_map(|ray| ray.iter().map(|v| Rational::from_integer(v.clone())))
        .collect();
    RationalMatrix::new(rays.len(), m, entries)
        .map(|mat| mat.rank())
        .unwrap_or(0)
}

/// Least squares via normal equations; `rows` holds the stacked
/// constraint rows. Returns `None` when the system is singular.
fn least_squares(rows: &[Vec<f64>], rhs: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut normal = vec![0.0; m * m];
    let mut b = vec![0.0; m];
    for (row, &y) in rows.iter().zip(rhs) {
        for i in 0..m {
            b[i] += row[i] * y;
            for j in 0..m {
                normal[i * m + j] += row[i] * row[j];
            }
        }
    }
    solve_dense(&mut normal, &mut b, m)
}

fn solve_dense(a: &mut [f64], b: &mut [f64], m: usize) -> Option<Vec<f64>> {
    for col in 0..m {
        let pivot_row = (col..m).max_by(|&r, &s| {
            a[r * m + col]
                .abs()
                .partial_cmp(&a[s * m + col].abs())
                .unwrap()
        })?;
        if a[pivot_row * m + col].abs() < 1e-300 {
            return None;
        }
        if pivot_row != col {
            for j in 0..m {
                a.swap(col * m + j, pivot_row * m + j);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * m + col];
        for r in col + 1..m {
            let factor = a[r * m + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..m {
                a[r * m + j] -= factor * a[col * m + j];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let mut acc = b[row];
        for j in row + 1..m {
            acc -= a[row * m + j] * x[j];
        }
        x[row] = acc / a[row * m + row];
    }
    Some(x)
}
