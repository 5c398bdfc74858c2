//! Trajectory iteration, convergence detection, and cycle detection.

use crate::operators::{OperatorError, SimplexMap};
use crate::simplex::{SimplexError, SimplexPoint};
use thiserror::Error;

pub const DEFAULT_MAX_STEPS: usize = 10_000;
pub const DEFAULT_CONV_TOL: f64 = 1e-12;
pub const DEFAULT_FP_TOL: f64 = 1e-9;

/// Consecutive sub-tolerance steps required before declaring convergence;
/// single small steps occur near slow manifolds.
const CONV_PATIENCE: usize = 10;
/// Largest revisit lag considered by the cycle detector.
const MAX_LAG: usize = 50;
/// A candidate period `p` must persist for `3p` steps.
const PERIOD_CONFIRMATIONS: usize = 3;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("max_steps must be at least 1")]
    ZeroSteps,
    #[error("convergence tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("initial point has dimension {point}, operator expects {op}")]
    DimensionMismatch { op: usize, point: usize },
    #[error("iterate left the simplex at step {step}: {source}")]
    Drift { step: usize, source: SimplexError },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Why iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    PeriodDetected(usize),
    MaxStepsReached,
}

/// A named Lyapunov value series evaluated along a trajectory.
#[derive(Debug, Clone)]
pub struct NamedTrace {
    pub label: String,
    pub values: Vec<f64>,
}

/// The recorded orbit `x(0), ..., x(N)` with consecutive L1 deltas.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    points: Vec<SimplexPoint>,
    step_deltas: Vec<f64>,
    lyapunov_traces: Vec<NamedTrace>,
    stop_reason: StopReason,
}

impl TrajectoryRecord {
    pub fn points(&self) -> &[SimplexPoint] {
        &self.points
    }

    pub fn step_deltas(&self) -> &[f64] {
        &self.step_deltas
    }

    pub fn stop_reason(&self) -> StopReason {
        self.stop_reason
    }

    pub fn last_point(&self) -> &SimplexPoint {
        self.points.last().expect("trajectory is never empty")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // points is nonempty by construction
    }

    pub fn lyapunov_traces(&self) -> &[NamedTrace] {
        &self.lyapunov_traces
    }

    /// Attaches a named value series (one value per recorded point).
    pub fn attach_trace(&mut self, label: impl Into<String>, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.points.len());
        self.lyapunov_traces.push(NamedTrace {
            label: label.into(),
            values,
        });
    }
}

/// What the trajectory tail looks like.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitReport {
    FixedPoint { point: SimplexPoint, residual: f64 },
    Cycle { period: usize, representatives: Vec<SimplexPoint> },
    Undecided,
}

/// Iterates `op` from `x0`, recording every point. Stops early when the
/// step delta stays below `conv_tol` for ten consecutive steps
/// (`Converged`) or when a revisit at some lag `p >= 2` persists for `3p`
/// steps (`PeriodDetected`). Iterates are never renormalized; a point
/// that leaves the simplex fails the run.
pub fn iterate<M: SimplexMap + ?Sized>(
    op: &M,
    x0: &SimplexPoint,
    max_steps: usize,
    conv_tol: f64,
) -> Result<TrajectoryRecord, DynamicsError> {
    if max_steps == 0 {
        return Err(DynamicsError::ZeroSteps);
    }
    if conv_tol.is_nan() || conv_tol <= 0.0 {
        return Err(DynamicsError::BadTolerance(conv_tol));
    }
    if x0.dim() != op.dim() {
        return Err(DynamicsError::DimensionMismatch {
            op: op.dim(),
            point: x0.dim(),
        });
    }
    // The drift guard scales with any sum error already present in x0:
    // a quadratic map roughly doubles it, which must not count as drift.
    let x0_sum_error = (x0.coords().iter().sum::<f64>() - 1.0).abs();
    let guard_sum_tol = crate::simplex::SUM_TOLERANCE.max(4.0 * x0_sum_error);

    let mut points = vec![x0.clone()];
    let mut step_deltas = Vec::new();
    let mut stop_reason = StopReason::MaxStepsReached;
    let mut conv_run = 0usize;
    let mut candidate_period = 0usize;
    let mut candidate_run = 0usize;

    for step in 1..=max_steps {
        let image = crate::operators::evaluate(op, points[step - 1].coords())?;
        let next = SimplexPoint::with_tolerances(image, crate::simplex::COORD_SLACK, guard_sum_tol)
            .map_err(|source| DynamicsError::Drift { step, source })?;
        let delta = next.l1_distance(&points[step - 1]);
        points.push(next);
        step_deltas.push(delta);

        if delta < conv_tol {
            conv_run += 1;
            candidate_run = 0;
            if conv_run >= CONV_PATIENCE {
                stop_reason = StopReason::Converged;
                break;
            }
            continue;
        }
        conv_run = 0;

        // Nearest revisit at lag >= 2; lag 1 was just ruled out.
        let mut found = None;
        let max_lag = MAX_LAG.min(step);
        for lag in 2..=max_lag {
            if points[step].l1_distance(&points[step - lag]) < conv_tol {
                found = Some(lag);
                break;
            }
        }
        match found {
            Some(p) if p == candidate_period => {
                candidate_run += 1;
                if candidate_run >= PERIOD_CONFIRMATIONS * p {
                    stop_reason = StopReason::PeriodDetected(p);
                    break;
                }
            }
            Some(p) => {
                candidate_period = p;
                candidate_run = 1;
            }
            None => {
                candidate_run = 0;
            }
        }
    }

    Ok(TrajectoryRecord {
        points,
        step_deltas,
        lyapunov_traces: Vec::new(),
        stop_reason,
    })
}

/// Summarizes the limit behavior of a recorded trajectory. A converged
/// run yields a fixed point only when the residual `|V(x*) - x*|_1`
/// passes `fp_tol`; a detected period yields the last `p` points as cycle
/// representatives.
pub fn detect_limit<M: SimplexMap + ?Sized>(
    traj: &TrajectoryRecord,
    op: &M,
    fp_tol: f64,
) -> LimitReport {
    match traj.stop_reason() {
        StopReason::Converged => {
            let candidate = traj.last_point();
            let image = match crate::operators::evaluate(op, candidate.coords()) {
                Ok(image) => image,
                Err(_) => return LimitReport::Undecided,
            };
            let residual = crate::simplex::l1_distance(&image, candidate.coords());
            if residual <= fp_tol {
                LimitReport::FixedPoint {
                    point: candidate.clone(),
                    residual,
                }
            } else {
                LimitReport::Undecided
            }
        }
        StopReason::PeriodDetected(period) => {
            let n = traj.len();
            let representatives = traj.points()[n - period..].to_vec();
            LimitReport::Cycle {
                period,
                representatives,
            }
        }
        StopReason::MaxStepsReached => LimitReport::Undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn constant_map_converges_after_one_step() {
        let pair = fixtures::constant_pair();
        let kernel = pair.kernel().unwrap();
        let x0 = SimplexPoint::new(vec![0.9, 0.1]).unwrap();
        let traj = iterate(&kernel, &x0, DEFAULT_MAX_STEPS, DEFAULT_CONV_TOL).unwrap();
        assert_eq!(traj.stop_reason(), StopReason::Converged);
        assert_eq!(traj.last_point().coords(), &[0.5, 0.5]);
        // x1 already equals the payload; ten quiet steps confirm it.
        assert_eq!(traj.points()[1].coords(), &[0.5, 0.5]);

        match detect_limit(&traj, &kernel, DEFAULT_FP_TOL) {
            LimitReport::FixedPoint { point, residual } => {
                assert_eq!(point.coords(), &[0.5, 0.5]);
                assert_eq!(residual, 0.0);
            }
            other => panic!("expected fixed point, got {other:?}"),
        }
    }

    #[test]
    fn cyclic_permutation_reports_period_three() {
        let pair = fixtures::cyclic_permutation_pair();
        let kernel = pair.kernel().unwrap();
        let x0 = SimplexPoint::new(vec![0.6, 0.3, 0.1]).unwrap();
        let traj = iterate(&kernel, &x0, DEFAULT_MAX_STEPS, DEFAULT_CONV_TOL).unwrap();
        assert_eq!(traj.stop_reason(), StopReason::PeriodDetected(3));

        match detect_limit(&traj, &kernel, DEFAULT_FP_TOL) {
            LimitReport::Cycle {
                period,
                representatives,
            } => {
                assert_eq!(period, 3);
                assert_eq!(representatives.len(), 3);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn cone_family_converges_from_uniform() {
        let pair = fixtures::cone_family_canonical();
        let kernel = pair.kernel().unwrap();
        let traj = iterate(&kernel, &SimplexPoint::uniform(3), 5000, 1e-13).unwrap();
        assert_eq!(traj.stop_reason(), StopReason::Converged);
        // Mass drains into the first species.
        assert!((traj.last_point().coords()[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn truncated_run_is_undecided() {
        let pair = fixtures::cone_family_canonical();
        let kernel = pair.kernel().unwrap();
        let traj = iterate(&kernel, &SimplexPoint::uniform(3), 2, DEFAULT_CONV_TOL).unwrap();
        assert_eq!(traj.stop_reason(), StopReason::MaxStepsReached);
        assert_eq!(detect_limit(&traj, &kernel, DEFAULT_FP_TOL), LimitReport::Undecided);
    }

    #[test]
    fn config_validation() {
        let pair = fixtures::constant_pair();
        let kernel = pair.kernel().unwrap();
        let x0 = SimplexPoint::uniform(2);
        assert!(matches!(
            iterate(&kernel, &x0, 0, DEFAULT_CONV_TOL),
            Err(DynamicsError::ZeroSteps)
        ));
        assert!(matches!(
            iterate(&kernel, &x0, 10, 0.0),
            Err(DynamicsError::BadTolerance(_))
        ));
        assert!(matches!(
            iterate(&kernel, &SimplexPoint::uniform(3), 10, 1e-9),
            Err(DynamicsError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn deltas_match_points() {
        let pair = fixtures::cone_family_canonical();
        let kernel = pair.kernel().unwrap();
        let traj = iterate(&kernel, &SimplexPoint::uniform(3), 20, 1e-30).unwrap();
        assert_eq!(traj.step_deltas().len(), traj.len() - 1);
        assert!(traj.step_deltas().iter().all(|&d| d >= 0.0));
    }

    #[test]
    fn traces_attach() {
        let pair = fixtures::constant_pair();
        let kernel = pair.kernel().unwrap();
        let mut traj = iterate(&kernel, &SimplexPoint::uniform(2), 50, 1e-12).unwrap();
        let values = vec![1.0; traj.len()];
        traj.attach_trace("ones", values);
        assert_eq!(traj.lyapunov_traces().len(), 1);
        assert_eq!(traj.lyapunov_traces()[0].label, "ones");
    }
}
