//! The cubic heredity tensor.

use super::map::{SimplexMap, TensorKernel};
use super::OperatorError;
use crate::numerics::{rational_to_f64, Rational};
use crate::simplex::SimplexPoint;
use num_traits::{One, Signed, Zero};

/// Heredity coefficients `P[i][j][k]`: the probability that parents of
/// species `i` and `j` produce offspring of species `k`. Entries are
/// exact rationals; nonnegativity and unit slice sums are checked on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicTensor {
    m: usize,
    entries: Vec<Rational>, // index (i * m + j) * m + k
}

impl CubicTensor {
    pub fn new(m: usize, entries: Vec<Rational>) -> Result<Self, OperatorError> {
        if entries.len() != m * m * m {
            return Err(OperatorError::TensorShape {
                m,
                entries: entries.len(),
            });
        }
        let tensor = Self { m, entries };
        for i in 0..m {
            for j in 0..m {
                let mut sum = Rational::zero();
                for k in 0..m {
                    let value = tensor.get(i, j, k);
                    if value.is_negative() {
                        return Err(OperatorError::NegativeTensorEntry { i, j, k });
                    }
                    sum += value;
                }
                if !sum.is_one() {
                    return Err(OperatorError::SliceSum {
                        i,
                        j,
                        sum: sum.to_string(),
                    });
                }
            }
        }
        Ok(tensor)
    }

    /// Builds the tensor from a coefficient function.
    pub fn from_fn<F>(m: usize, mut f: F) -> Result<Self, OperatorError>
    where
        F: FnMut(usize, usize, usize) -> Rational,
    {
        let mut entries = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    entries.push(f(i, j, k));
                }
            }
        }
        Self::new(m, entries)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.entries[(i * self.m + j) * self.m + k]
    }

    /// True iff `P[i][j][k] = 0` whenever `k` is not one of the parents,
    /// i.e. every offspring repeats a parental type.
    pub fn is_volterra(&self) -> bool {
        for i in 0..self.m {
            for j in 0..self.m {
                for k in 0..self.m {
                    if k != i && k != j && !self.get(i, j, k).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// First violation of the Volterra condition, if any.
    pub(crate) fn volterra_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.m {
            for j in 0..self.m {
                for k in 0..self.m {
                    if k != i && k != j && !self.get(i, j, k).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The symmetrized tensor `(P[i][j][k] + P[j][i][k]) / 2`. The induced
    /// quadratic map is unchanged.
    pub fn symmetrized(&self) -> Self {
        let m = self.m;
        let mut entries = Vec::with_capacity(m * m * m);
        let half = Rational::new(1.into(), 2.into());
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    entries.push((self.get(i, j, k) + self.get(j, i, k)) * &half);
                }
            }
        }
        Self { m, entries }
    }

    /// Floating-point kernel for iteration.
    pub fn kernel(&self) -> TensorKernel {
        TensorKernel {
            m: self.m,
            p: self.entries.iter().map(rational_to_f64).collect(),
        }
    }

    /// Applies the quadratic map `x'_k = sum_{i,j} P[i][j][k] x_i x_j`.
    pub fn apply(&self, x: &SimplexPoint) -> Result<SimplexPoint, OperatorError> {
        self.kernel().apply(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numerics::ratio;

    #[test]
    fn rejects_bad_slices() {
        let mut entries = vec![Rational::zero(); 8];
        entries[0] = ratio(1, 2); // P[0][0][0]
        entries[1] = ratio(1, 2);
        entries[3] = ratio(1, 1);
        entries[5] = ratio(1, 1);
        entries[7] = ratio(3, 4); // P[1][1][1] short of 1
        let err = CubicTensor::new(2, entries.clone()).unwrap_err();
        assert!(matches!(err, OperatorError::SliceSum { i: 1, j: 1, .. }));
        entries[6] = ratio(-1, 4);
        entries[7] = ratio(5, 4);
        assert!(matches!(
            CubicTensor::new(2, entries),
            Err(OperatorError::NegativeTensorEntry { .. })
        ));
    }

    #[test]
    fn weak_pair_tensor_is_not_volterra() {
        // Several entries put offspring outside the parent set; the scan
        // hits P[0][0][1] = 1 first.
        let t = fixtures::weak_pair_tensor();
        assert!(!t.is_volterra());
        assert_eq!(t.volterra_violation(), Some((0, 0, 1)));
        assert!(!t.get(0, 2, 1).is_zero());
    }

    #[test]
    fn identity_tensor_is_volterra() {
        let m = 3;
        let t = CubicTensor::from_fn(m, |i, _j, k| {
            if i == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .unwrap();
        assert!(t.is_volterra());
        let x = SimplexPoint::new(vec![0.2, 0.3, 0.5]).unwrap();
        let y = t.apply(&x).unwrap();
        assert_eq!(y.coords(), x.coords());
    }

    #[test]
    fn symmetrization_keeps_the_map() {
        let t = fixtures::weak_pair_tensor();
        let s = t.symmetrized();
        let x = SimplexPoint::new(vec![0.1, 0.6, 0.3]).unwrap();
        let a = t.apply(&x).unwrap();
        let b = s.apply(&x).unwrap();
        assert!(a.l1_distance(&b) <= 1e-15);
    }

    #[test]
    fn vertex_input_selects_a_tensor_row() {
        // At the vertex e1, x'_k = P[0][0][k].
        let pair = crate::fixtures::cone_family_canonical();
        let t = pair.build_tensor().unwrap();
        let y = t.apply(&SimplexPoint::vertex(3, 0)).unwrap();
        let expected: Vec<f64> = (0..3)
            .map(|k| crate::numerics::rational_to_f64(t.get(0, 0, k)))
            .collect();
        assert_eq!(y.coords(), expected.as_slice());
    }

    #[test]
    fn cone_family_tensor_is_not_volterra() {
        // P[1][1][0] = a_10 b_10 = 1/3, yet 0 is not a parent of (1, 1).
        let pair = crate::fixtures::cone_family_canonical();
        let t = pair.build_tensor().unwrap();
        assert!(!t.is_volterra());
        assert_eq!(*t.get(1, 1, 0), ratio(1, 3));
    }

    #[test]
    fn quadratic_map_at_uniform_point() {
        let t = fixtures::weak_pair_tensor();
        let x = SimplexPoint::uniform(3);
        let y = t.apply(&x).unwrap();
        let expected = [1.0 / 9.0, 5.0 / 9.0, 1.0 / 3.0];
        for (got, want) in y.coords().iter().zip(expected) {
            assert!((got - want).abs() <= 2e-15);
        }
    }
}
