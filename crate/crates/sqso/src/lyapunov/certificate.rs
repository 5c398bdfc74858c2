//! Lyapunov certificates and monotonicity verification.

use crate::dynamics::TrajectoryRecord;
use crate::numerics::{rational_to_f64, Rational};
use crate::simplex::SimplexPoint;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CertificateError {
    #[error("certificate weights must be nonempty")]
    Empty,
    #[error("weight {index} is negative")]
    NegativeWeight { index: usize },
    #[error("linear certificate needs a positive weight sum")]
    ZeroSum,
    #[error("exponent {index} is negative or not finite")]
    BadExponent { index: usize },
    #[error("forms and exponents differ in length: {forms} vs {exponents}")]
    LengthMismatch { forms: usize, exponents: usize },
}

/// A certified functional: either the linear form `psi_c(x) = sum c_k x_k`
/// or a product `prod_k (c^(k) . x)^{p_k}` of linear forms.
#[derive(Debug, Clone, PartialEq)]
pub enum LyapunovCertificate {
    Linear {
        weights: Vec<Rational>,
    },
    Product {
        forms: Vec<Vec<Rational>>,
        exponents: Vec<f64>,
    },
}

impl LyapunovCertificate {
    pub fn linear(weights: Vec<Rational>) -> Result<Self, CertificateError> {
        if weights.is_empty() {
            return Err(CertificateError::Empty);
        }
        let mut sum = Rational::zero();
        for (index, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(CertificateError::NegativeWeight { index });
            }
            sum += w;
        }
        if !sum.is_positive() {
            return Err(CertificateError::ZeroSum);
        }
        Ok(Self::Linear { weights })
    }

    pub fn product(forms: Vec<Vec<Rational>>, exponents: Vec<f64>) -> Result<Self, CertificateError> {
        if forms.is_empty() {
            return Err(CertificateError::Empty);
        }
        if forms.len() != exponents.len() {
            return Err(CertificateError::LengthMismatch {
                forms: forms.len(),
                exponents: exponents.len(),
            });
        }
        for form in &forms {
            for (index, w) in form.iter().enumerate() {
                if w.is_negative() {
                    return Err(CertificateError::NegativeWeight { index });
                }
            }
        }
        for (index, &p) in exponents.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(CertificateError::BadExponent { index });
            }
        }
        Ok(Self::Product { forms, exponents })
    }

    /// Linear certificate from a primitive integer ray.
    pub fn from_ray(ray: &[BigInt]) -> Result<Self, CertificateError> {
        Self::linear(
            ray.iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect(),
        )
    }

    /// Evaluates the certificate at a point. For products, an inner sum
    /// that is zero with a positive exponent contributes 0 and `0^0 = 1`.
    pub fn value(&self, x: &SimplexPoint) -> f64 {
        match self {
            Self::Linear { weights } => linear_value(&to_f64(weights), x.coords()),
            Self::Product { forms, exponents } => {
                let mut acc = 1.0;
                for (form, &p) in forms.iter().zip(exponents) {
                    // Clamp tiny negative inner sums from boundary rounding.
                    let inner = linear_value(&to_f64(form), x.coords()).max(0.0);
                    acc *= inner.powf(p);
                }
                acc
            }
        }
    }

    /// Values along an entire trajectory (weights converted once).
    pub fn value_series(&self, traj: &TrajectoryRecord) -> Vec<f64> {
        match self {
            Self::Linear { weights } => {
                let w = to_f64(weights);
                traj.points()
                    .iter()
                    .map(|x| linear_value(&w, x.coords()))
                    .collect()
            }
            Self::Product { forms, exponents } => {
                let ws: Vec<Vec<f64>> = forms.iter().map(|f| to_f64(f)).collect();
                traj.points()
                    .iter()
                    .map(|x| {
                        let mut acc = 1.0;
                        for (w, &p) in ws.iter().zip(exponents) {
                            acc *= linear_value(w, x.coords()).max(0.0).powf(p);
                        }
                        acc
                    })
                    .collect()
            }
        }
    }

    /// Extreme values of the linear weights, the a-priori bounds of the
    /// value sequence on the simplex.
    pub fn linear_bounds(&self) -> Option<(f64, f64)> {
        match self {
            Self::Linear { weights } => {
                let w = to_f64(weights);
                let lo = w.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                Some((lo, hi))
            }
            Self::Product { .. } => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Linear { weights } => weights.len(),
            Self::Product { forms, .. } => forms.first().map_or(0, Vec::len),
        }
    }
}

fn to_f64(weights: &[Rational]) -> Vec<f64> {
    weights.iter().map(rational_to_f64).collect()
}

fn linear_value(weights: &[f64], coords: &[f64]) -> f64 {
    weights.iter().zip(coords).map(|(w, x)| w * x).sum()
}

/// Evaluates the certificate along a trajectory and records the series
/// under `label` in the trajectory's traces.
pub fn attach_certificate_trace(
    traj: &mut TrajectoryRecord,
    label: impl Into<String>,
    cert: &LyapunovCertificate,
) {
    let values = cert.value_series(traj);
    traj.attach_trace(label, values);
}

/// Outcome of checking a certificate along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneReport {
    /// True iff no step increased the value beyond the slack.
    pub monotone: bool,
    /// Number of offending steps.
    pub violations: usize,
    /// Largest observed increase (0 when none).
    pub worst_increase: f64,
    pub min_value: f64,
    pub max_value: f64,
    /// For linear forms: whether every value stayed inside
    /// `[min c_i, max c_i]` up to the slack. `None` for product forms.
    pub bounds_ok: Option<bool>,
}

/// Checks `psi(x(n+1)) <= psi(x(n)) + slack` along the whole trajectory.
/// Linear forms use the slack as an absolute allowance; product forms
/// scale it by the magnitude of the current value.
pub fn verify_monotone(
    cert: &LyapunovCertificate,
    traj: &TrajectoryRecord,
    slack: f64,
) -> MonotoneReport {
    let values = cert.value_series(traj);
    let relative = matches!(cert, LyapunovCertificate::Product { .. });
    let mut violations = 0usize;
    let mut worst = 0.0f64;
    for pair in values.windows(2) {
        let increase = pair[1] - pair[0];
        let allowance = if relative {
            slack * pair[0].abs().max(1.0)
        } else {
            slack
        };
        if increase > allowance {
            violations += 1;
            worst = worst.max(increase);
        }
    }
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max_value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bounds_ok = cert
        .linear_bounds()
        .map(|(lo, hi)| min_value >= lo - slack && max_value <= hi + slack);
    MonotoneReport {
        monotone: violations == 0,
        violations,
        worst_increase: worst,
        min_value,
        max_value,
        bounds_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn constructors_validate() {
        assert!(LyapunovCertificate::linear(vec![]).is_err());
        assert!(matches!(
            LyapunovCertificate::linear(vec![ratio(-1, 1)]),
            Err(CertificateError::NegativeWeight { index: 0 })
        ));
        assert!(matches!(
            LyapunovCertificate::linear(vec![ratio(0, 1), ratio(0, 1)]),
            Err(CertificateError::ZeroSum)
        ));
        assert!(LyapunovCertificate::product(vec![vec![ratio(1, 1)]], vec![-1.0]).is_err());
        assert!(LyapunovCertificate::product(vec![vec![ratio(1, 1)]], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn all_ones_evaluates_to_one() {
        let cert = LyapunovCertificate::linear(vec![ratio(1, 1); 3]).unwrap();
        let x = SimplexPoint::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert!((cert.value(&x) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn ray_value_at_uniform_point() {
        let cert =
            LyapunovCertificate::linear(vec![ratio(9, 1), ratio(11, 1), ratio(10, 1)]).unwrap();
        let x = SimplexPoint::uniform(3);
        assert!((cert.value(&x) - 10.0).abs() <= 1e-14);
    }

    #[test]
    fn single_factor_product_matches_linear() {
        let weights = vec![ratio(9, 1), ratio(11, 1), ratio(10, 1)];
        let linear = LyapunovCertificate::linear(weights.clone()).unwrap();
        let product = LyapunovCertificate::product(
            vec![weights, vec![ratio(1, 1); 3]],
            vec![1.0, 0.0],
        )
        .unwrap();
        let x = SimplexPoint::new(vec![0.5, 0.25, 0.25]).unwrap();
        assert!((linear.value(&x) - product.value(&x)).abs() <= 1e-13);
    }

    #[test]
    fn constant_trajectory_is_monotone_from_the_payload() {
        let pair = crate::fixtures::constant_pair();
        let kernel = pair.kernel().unwrap();
        let payload = SimplexPoint::new(vec![0.5, 0.5]).unwrap();
        let mut traj = crate::dynamics::iterate(&kernel, &payload, 50, 1e-12).unwrap();
        let cert = LyapunovCertificate::linear(vec![ratio(1, 1), ratio(0, 1)]).unwrap();
        let report = verify_monotone(&cert, &traj, 1e-12);
        assert!(report.monotone);
        assert_eq!(report.min_value, report.max_value);

        super::attach_certificate_trace(&mut traj, "first-coordinate", &cert);
        assert_eq!(traj.lyapunov_traces()[0].values.len(), traj.len());
        assert!(traj.lyapunov_traces()[0].values.iter().all(|&v| v == 0.5));
    }

    #[test]
    fn zero_inner_sum_with_positive_exponent_gives_zero() {
        let product = LyapunovCertificate::product(
            vec![vec![ratio(0, 1), ratio(1, 1)]],
            vec![2.0],
        )
        .unwrap();
        let vertex = SimplexPoint::vertex(2, 0);
        assert_eq!(product.value(&vertex), 0.0);
        // 0^0 = 1 by convention.
        let flat = LyapunovCertificate::product(
            vec![vec![ratio(0, 1), ratio(1, 1)]],
            vec![0.0],
        )
        .unwrap();
        assert_eq!(flat.value(&vertex), 1.0);
    }
}
