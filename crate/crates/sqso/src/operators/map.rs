//! Floating-point kernels for iterating operators.
//!
//! Exact rational data is converted once when a kernel is built; every
//! subsequent application is plain `f64` arithmetic.
//!
//! Quadratic kernels are homogeneous of degree two, so the exact identity
//! `sum V(x) = (sum x)^2` doubles any floating-point sum error on every
//! step; iterating the raw formula collapses after ~50 steps no matter
//! how it is evaluated. The sum direction is a pure gauge mode (scaling
//! the input scales the output), so those kernels are evaluated
//! projectively: the raw image must pass a strict stochasticity guard —
//! a kernel bug still fails loudly — and is then read back on the
//! simplex chart by dividing by its sum. Volterra and Markov kernels are
//! not homogeneous, carry no such instability, and stay raw.

use super::OperatorError;
use crate::simplex::SimplexPoint;

/// How far the raw image's sum may deviate from 1 before the kernel is
/// declared broken (on top of any sum error already in the input).
pub const RAW_SUM_TOL: f64 = 1e-12;

/// A map of the probability simplex into itself.
pub trait SimplexMap {
    fn dim(&self) -> usize;

    /// The image of the defining formula, before any gauge projection.
    fn apply_raw(&self, x: &[f64]) -> Vec<f64>;

    /// True for homogeneous quadratic kernels, which are evaluated
    /// projectively.
    fn projective(&self) -> bool {
        false
    }

    /// Applies the map and validates the result as a simplex point.
    fn apply(&self, x: &SimplexPoint) -> Result<SimplexPoint, OperatorError> {
        if x.dim() != self.dim() {
            return Err(OperatorError::DimensionMismatch {
                op: self.dim(),
                point: x.dim(),
            });
        }
        Ok(SimplexPoint::new(evaluate(self, x.coords())?)?)
    }
}

/// One guarded evaluation step: checks that the raw image conserves total
/// probability up to rounding, then projects homogeneous kernels back
/// onto the simplex chart.
pub(crate) fn evaluate<M: SimplexMap + ?Sized>(
    op: &M,
    x: &[f64],
) -> Result<Vec<f64>, OperatorError> {
    let mut raw = op.apply_raw(x);
    let raw_sum: f64 = raw.iter().sum();
    let input_error = (x.iter().sum::<f64>() - 1.0).abs();
    let allowed = RAW_SUM_TOL + 4.0 * input_error;
    if raw_sum.is_nan() || (raw_sum - 1.0).abs() > allowed {
        return Err(OperatorError::StochasticityDrift { sum: raw_sum });
    }
    if op.projective() {
        for value in &mut raw {
            *value /= raw_sum;
        }
    }
    Ok(raw)
}

/// Separable operator kernel: `x'_k = (sum_i a_ik x_i)(sum_j b_jk x_j)`.
/// Both sums run over column `k` of the respective matrix.
#[derive(Debug, Clone)]
pub struct SqsoKernel {
    pub(crate) m: usize,
    pub(crate) a: Vec<f64>, // row-major
    pub(crate) b: Vec<f64>,
}

impl SimplexMap for SqsoKernel {
    fn dim(&self) -> usize {
        self.m
    }

    fn projective(&self) -> bool {
        true
    }

    fn apply_raw(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut sa = 0.0;
            let mut sb = 0.0;
            for (i, &xi) in x.iter().enumerate() {
                sa += self.a[i * m + k] * xi;
                sb += self.b[i * m + k] * xi;
            }
            *slot = sa * sb;
        }
        out
    }
}

/// Full quadratic kernel: `x'_k = sum_{i,j} P[i][j][k] x_i x_j`.
#[derive(Debug, Clone)]
pub struct TensorKernel {
    pub(crate) m: usize,
    pub(crate) p: Vec<f64>, // index (i * m + j) * m + k
}

impl SimplexMap for TensorKernel {
    fn dim(&self) -> usize {
        self.m
    }

    fn projective(&self) -> bool {
        true
    }

    fn apply_raw(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m];
        for i in 0..m {
            for j in 0..m {
                let w = x[i] * x[j];
                if w == 0.0 {
                    continue;
                }
                let base = (i * m + j) * m;
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot += self.p[base + k] * w;
                }
            }
        }
        out
    }
}

/// Markov kernel for the linear classification payload: `x'_k = sum_i p_ik x_i`
/// with `p` row-stochastic.
#[derive(Debug, Clone)]
pub struct LinearKernel {
    pub(crate) m: usize,
    pub(crate) p: Vec<f64>, // row-major
}

impl SimplexMap for LinearKernel {
    fn dim(&self) -> usize {
        self.m
    }

    fn apply_raw(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (i, &xi) in x.iter().enumerate() {
                acc += self.p[i * m + k] * xi;
            }
            *slot = acc;
        }
        out
    }
}
