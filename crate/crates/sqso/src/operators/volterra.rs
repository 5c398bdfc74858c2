//! Volterra normal form `x'_k = x_k (1 + sum_i a_ki x_i)`.

use super::map::SimplexMap;
use super::tensor::CubicTensor;
use super::OperatorError;
use crate::numerics::{rational_to_f64, Rational};
use num_traits::One;

/// Skew interaction form of a Volterra operator: `a_kk = 0`,
/// `a_ki = -a_ik`, `|a_ki| <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraOperator {
    m: usize,
    skew: Vec<f64>, // row-major a_ki
}

impl VolterraOperator {
    pub fn new(m: usize, skew: Vec<f64>) -> Result<Self, OperatorError> {
        if skew.len() != m * m {
            return Err(OperatorError::SkewInvariant(format!(
                "expected {} entries, got {}",
                m * m,
                skew.len()
            )));
        }
        for k in 0..m {
            if skew[k * m + k] != 0.0 {
                return Err(OperatorError::SkewInvariant(format!(
                    "diagonal entry a[{k}][{k}] must be 0"
                )));
            }
            for i in 0..m {
                let a_ki = skew[k * m + i];
                if a_ki.is_nan() || a_ki.abs() > 1.0 {
                    return Err(OperatorError::SkewInvariant(format!(
                        "|a[{k}][{i}]| = {} exceeds 1",
                        a_ki.abs()
                    )));
                }
                if a_ki + skew[i * m + k] != 0.0 {
                    return Err(OperatorError::SkewInvariant(format!(
                        "a[{k}][{i}] + a[{i}][{k}] != 0"
                    )));
                }
            }
        }
        Ok(Self { m, skew })
    }

    /// Extracts the skew form `a_ki = 2 P[i][k][k] - 1` from a Volterra
    /// tensor. The tensor is symmetrized first, which leaves the induced
    /// map unchanged and makes the extracted form skew for tensors that
    /// are not symmetric in the parent indices.
    pub fn from_tensor(tensor: &CubicTensor) -> Result<Self, OperatorError> {
        if let Some((i, j, k)) = tensor.volterra_violation() {
            return Err(OperatorError::NotVolterra { i, j, k });
        }
        let sym = tensor.symmetrized();
        let m = sym.m();
        let one = Rational::one();
        let two = Rational::from_integer(2.into());
        let mut skew = vec![0.0; m * m];
        for k in 0..m {
            for i in 0..m {
                if i == k {
                    continue;
                }
                let exact = &two * sym.get(i, k, k) - &one;
                skew[k * m + i] = rational_to_f64(&exact);
            }
        }
        Self::new(m, skew)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn skew(&self) -> &[f64] {
        &self.skew
    }
}

impl SimplexMap for VolterraOperator {
    fn dim(&self) -> usize {
        self.m
    }

    fn apply_raw(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut interaction = 0.0;
            for (i, &xi) in x.iter().enumerate() {
                interaction += self.skew[k * m + i] * xi;
            }
            *slot = x[k] * (1.0 + interaction);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numerics::ratio;
    use crate::simplex::SimplexPoint;
    use num_traits::Zero;

    #[test]
    fn neutral_interbreeding_gives_zero_skew() {
        // P[i][k][k] = 1/2 off the diagonal and P[i][i][i] = 1.
        let t = CubicTensor::from_fn(3, |i, j, k| {
            if i == j {
                if k == i {
                    ratio(1, 1)
                } else {
                    ratio(0, 1)
                }
            } else if k == i || k == j {
                ratio(1, 2)
            } else {
                ratio(0, 1)
            }
        })
        .unwrap();
        let v = VolterraOperator::from_tensor(&t).unwrap();
        assert!(v.skew().iter().all(|&a| a == 0.0));
    }

    #[test]
    fn identity_pair_tensor_gives_identity_volterra() {
        let pair = fixtures::identity_pair(3);
        let t = pair.build_tensor().unwrap();
        assert!(t.is_volterra());
        let v = VolterraOperator::from_tensor(&t).unwrap();
        assert!(v.skew().iter().all(|&a| a == 0.0));
        let x = SimplexPoint::new(vec![0.25, 0.25, 0.5]).unwrap();
        assert_eq!(v.apply(&x).unwrap().coords(), x.coords());
    }

    #[test]
    fn rejects_non_volterra_tensor() {
        let t = fixtures::weak_pair_tensor();
        assert!(matches!(
            VolterraOperator::from_tensor(&t),
            Err(OperatorError::NotVolterra { .. })
        ));
    }

    #[test]
    fn extracted_form_is_always_skew() {
        // An asymmetric Volterra tensor: parents (0,1) favor 0, parents
        // (1,0) favor 1. Symmetrization must still produce a skew form.
        let t = CubicTensor::from_fn(2, |i, j, k| {
            if i == j {
                if k == i {
                    ratio(1, 1)
                } else {
                    ratio(0, 1)
                }
            } else if i == 0 {
                // parents (0,1)
                if k == 0 {
                    ratio(3, 4)
                } else {
                    ratio(1, 4)
                }
            } else if k == 1 {
                ratio(2, 3)
            } else {
                ratio(1, 3)
            }
        })
        .unwrap();
        let v = VolterraOperator::from_tensor(&t).unwrap();
        let m = v.m();
        for k in 0..m {
            for i in 0..m {
                assert_eq!(v.skew()[k * m + i] + v.skew()[i * m + k], 0.0);
            }
        }
    }

    #[test]
    fn two_species_closed_form() {
        let v = VolterraOperator::new(2, vec![0.0, 1.0, -1.0, 0.0]).unwrap();
        let x = SimplexPoint::new(vec![0.5, 0.5]).unwrap();
        let y = v.apply(&x).unwrap();
        assert_eq!(y.coords(), &[0.75, 0.25]);
    }

    #[test]
    fn skew_validation_rejects_bad_forms() {
        assert!(VolterraOperator::new(2, vec![0.5, 0.0, 0.0, 0.0]).is_err());
        assert!(VolterraOperator::new(2, vec![0.0, 1.5, -1.5, 0.0]).is_err());
        assert!(VolterraOperator::new(2, vec![0.0, 1.0, -0.5, 0.0]).is_err());
    }

    #[test]
    fn application_preserves_the_simplex() {
        let v = VolterraOperator::new(3, vec![0.0, 0.7, -0.2, -0.7, 0.0, 0.4, 0.2, -0.4, 0.0])
            .unwrap();
        let x = SimplexPoint::new(vec![0.1, 0.2, 0.7]).unwrap();
        let y = v.apply(&x).unwrap();
        let sum: f64 = y.coords().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn skew_zero_is_rational_exact() {
        // 2 * (1/2) - 1 must be exactly zero after conversion.
        assert!( (Rational::from_integer(2.into()) * ratio(1, 2) - Rational::one()).is_zero());
    }
}
