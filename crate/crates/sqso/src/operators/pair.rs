//! Separable pairs: validation, classification, tensor construction.

use super::map::{LinearKernel, SimplexMap, SqsoKernel};
use super::tensor::CubicTensor;
use super::OperatorError;
use crate::numerics::{rational_to_f64, Rational, RationalMatrix};
use crate::simplex::SimplexPoint;
use num_traits::{One, Signed, Zero};

/// How a matrix pair factors a stochastic tensor.
///
/// `Strict`: entrywise products are nonnegative and `A Bᵀ` is the all-ones
/// matrix, so `P[i][j][k] = a_ik b_jk` is itself a stochastic tensor.
/// `Weak`: only the symmetrized products are nonnegative and
/// `(A Bᵀ + B Aᵀ)/2` is all ones — the pair still defines a quadratic
/// stochastic operator, but not through the entrywise formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Strict,
    Weak,
    Invalid,
}

/// The three dynamical classes of a strictly admissible pair.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// Every point maps to the same output `(a_1k b_1k)_k`.
    Constant { point: Vec<Rational> },
    /// The operator is a Markov chain with the given row-stochastic matrix.
    Linear { matrix: RationalMatrix },
    /// Genuinely quadratic dynamics.
    Nonlinear,
}

impl Classification {
    /// The constant payload as a floating-point simplex point.
    pub fn constant_point(&self) -> Option<SimplexPoint> {
        match self {
            Classification::Constant { point } => {
                SimplexPoint::new(point.iter().map(rational_to_f64).collect()).ok()
            }
            _ => None,
        }
    }

    /// Iteration kernel for the linear payload.
    pub fn linear_kernel(&self) -> Option<LinearKernel> {
        match self {
            Classification::Linear { matrix } => Some(LinearKernel {
                m: matrix.rows(),
                p: matrix.to_f64_entries(),
            }),
            _ => None,
        }
    }
}

/// A validated matrix pair `(A, B)` together with the exact facts the
/// classification needs: determinants and identical-row flags.
#[derive(Debug, Clone)]
pub struct SqsoPair {
    m: usize,
    a: RationalMatrix,
    b: RationalMatrix,
    admissibility: Admissibility,
    det_a: Rational,
    det_b: Rational,
    rows_identical_a: bool,
    rows_identical_b: bool,
}

impl SqsoPair {
    /// Validates a pair. Admissibility is decided exactly; the pair is
    /// returned even when `Invalid` so callers can report the findings.
    pub fn validate(a: RationalMatrix, b: RationalMatrix) -> Result<Self, OperatorError> {
        if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(OperatorError::PairShape {
                a_rows: a.rows(),
                a_cols: a.cols(),
                b_rows: b.rows(),
                b_cols: b.cols(),
            });
        }
        let m = a.rows();
        let admissibility = if is_strict(&a, &b, m) {
            Admissibility::Strict
        } else if is_weak(&a, &b, m) {
            Admissibility::Weak
        } else {
            Admissibility::Invalid
        };
        let det_a = a.determinant()?;
        let det_b = b.determinant()?;
        let rows_identical_a = a.rows_identical();
        let rows_identical_b = b.rows_identical();
        Ok(Self {
            m,
            a,
            b,
            admissibility,
            det_a,
            det_b,
            rows_identical_a,
            rows_identical_b,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix_a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn matrix_b(&self) -> &RationalMatrix {
        &self.b
    }

    pub fn admissibility(&self) -> Admissibility {
        self.admissibility
    }

    pub fn det_a(&self) -> &Rational {
        &self.det_a
    }

    pub fn det_b(&self) -> &Rational {
        &self.det_b
    }

    pub fn rows_identical_a(&self) -> bool {
        self.rows_identical_a
    }

    pub fn rows_identical_b(&self) -> bool {
        self.rows_identical_b
    }

    /// Membership in the admissible family behind the Lyapunov theory:
    /// strict, both determinants zero, and neither matrix with all rows
    /// identical.
    pub fn in_admissible_family(&self) -> bool {
        self.admissibility == Admissibility::Strict
            && self.det_a.is_zero()
            && self.det_b.is_zero()
            && !self.rows_identical_a
            && !self.rows_identical_b
    }

    /// Builds the entrywise tensor `P[i][j][k] = a_ik b_jk`. Requires a
    /// strict pair; for weak pairs the entrywise formula does not give a
    /// stochastic tensor.
    pub fn build_tensor(&self) -> Result<CubicTensor, OperatorError> {
        if self.admissibility != Admissibility::Strict {
            return Err(OperatorError::NotStrict(self.admissibility));
        }
        CubicTensor::from_fn(self.m, |i, j, k| self.a.get(i, k) * self.b.get(j, k))
    }

    /// True iff the pair factors the tensor in the symmetrized sense:
    /// `P[i][j][k] + P[j][i][k] = a_ik b_jk + a_jk b_ik` for all indices.
    pub fn matches_tensor(&self, tensor: &CubicTensor) -> bool {
        if tensor.m() != self.m {
            return false;
        }
        for i in 0..self.m {
            for j in 0..self.m {
                for k in 0..self.m {
                    let lhs = tensor.get(i, j, k) + tensor.get(j, i, k);
                    let rhs =
                        self.a.get(i, k) * self.b.get(j, k) + self.a.get(j, k) * self.b.get(i, k);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Classifies a strict pair as constant, linear, or nonlinear.
    pub fn classify(&self) -> Result<Classification, OperatorError> {
        if self.admissibility != Admissibility::Strict {
            return Err(OperatorError::NotStrict(self.admissibility));
        }
        if !self.det_a.is_zero() {
            // A is invertible, so B is forced to have identical rows.
            if !self.rows_identical_b {
                return Err(OperatorError::Inconsistency(
                    "det(A) != 0 but B rows differ in a strict pair".into(),
                ));
            }
            return Ok(Classification::Linear {
                matrix: self.linear_payload(&self.a, &self.b),
            });
        }
        if !self.det_b.is_zero() {
            if !self.rows_identical_a {
                return Err(OperatorError::Inconsistency(
                    "det(B) != 0 but A rows differ in a strict pair".into(),
                ));
            }
            return Ok(Classification::Linear {
                matrix: self.linear_payload(&self.b, &self.a),
            });
        }
        if self.rows_identical_a && self.rows_identical_b {
            let point = (0..self.m)
                .map(|k| self.a.get(0, k) * self.b.get(0, k))
                .collect();
            return Ok(Classification::Constant { point });
        }
        Ok(Classification::Nonlinear)
    }

    /// Row-stochastic payload `p_ik = flat_1k * varying_ik` where `flat`
    /// is the identical-rows matrix.
    fn linear_payload(&self, varying: &RationalMatrix, flat: &RationalMatrix) -> RationalMatrix {
        let m = self.m;
        let mut entries = Vec::with_capacity(m * m);
        for i in 0..m {
            for k in 0..m {
                entries.push(flat.get(0, k) * varying.get(i, k));
            }
        }
        RationalMatrix::new(m, m, entries).expect("square payload")
    }

    /// Floating-point kernel. Errors for invalid pairs, which do not map
    /// the simplex into itself.
    pub fn kernel(&self) -> Result<SqsoKernel, OperatorError> {
        if self.admissibility == Admissibility::Invalid {
            return Err(OperatorError::InvalidPair);
        }
        Ok(SqsoKernel {
            m: self.m,
            a: self.a.to_f64_entries(),
            b: self.b.to_f64_entries(),
        })
    }

    /// Applies `x'_k = (sum_i a_ik x_i)(sum_j b_jk x_j)`.
    pub fn apply(&self, x: &SimplexPoint) -> Result<SimplexPoint, OperatorError> {
        self.kernel()?.apply(x)
    }
}

fn is_strict(a: &RationalMatrix, b: &RationalMatrix, m: usize) -> bool {
    for i in 0..m {
        for j in 0..m {
            let mut dot = Rational::zero();
            for k in 0..m {
                let prod = a.get(i, k) * b.get(j, k);
                if prod.is_negative() {
                    return false;
                }
                dot += prod;
            }
            if !dot.is_one() {
                return false;
            }
        }
    }
    true
}

fn is_weak(a: &RationalMatrix, b: &RationalMatrix, m: usize) -> bool {
    let two = Rational::from_integer(2.into());
    for i in 0..m {
        for j in 0..m {
            let mut dot = Rational::zero();
            for k in 0..m {
                let sym = a.get(i, k) * b.get(j, k) + a.get(j, k) * b.get(i, k);
                if sym.is_negative() {
                    return false;
                }
                dot += sym;
            }
            if dot != two {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numerics::ratio;

    #[test]
    fn duplicate_row_fixture_is_strict() {
        let pair = fixtures::duplicate_row_family(
            ratio(1, 1),
            [ratio(0, 1), ratio(1, 2), ratio(1, 1)],
        )
        .unwrap();
        assert_eq!(pair.admissibility(), Admissibility::Strict);
        assert!(pair.det_a().is_zero());
        assert!(pair.det_b().is_zero());
        assert!(pair.in_admissible_family());
    }

    #[test]
    fn weak_fixture_is_weak_not_strict() {
        let pair = fixtures::weak_pair();
        assert_eq!(pair.admissibility(), Admissibility::Weak);
        assert!(!pair.in_admissible_family());
    }

    #[test]
    fn identity_pair_is_invalid() {
        let a = RationalMatrix::identity(3);
        let b = RationalMatrix::identity(3);
        let pair = SqsoPair::validate(a, b).unwrap();
        assert_eq!(pair.admissibility(), Admissibility::Invalid);
        assert!(pair.kernel().is_err());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = RationalMatrix::identity(3);
        let b = RationalMatrix::identity(2);
        assert!(matches!(
            SqsoPair::validate(a, b),
            Err(OperatorError::PairShape { .. })
        ));
    }

    #[test]
    fn tensor_from_cone_family_starts_with_one() {
        let pair = fixtures::cone_family([ratio(2, 3), ratio(5, 6), ratio(1, 1)]).unwrap();
        let t = pair.build_tensor().unwrap();
        assert_eq!(*t.get(0, 0, 0), ratio(1, 1));
    }

    #[test]
    fn cyclic_pair_tensor_copies_a() {
        let pair = fixtures::cyclic_permutation_pair();
        let t = pair.build_tensor().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(t.get(i, j, k), pair.matrix_a().get(i, k));
                }
            }
        }
    }

    #[test]
    fn weak_pair_cannot_build_tensor() {
        let pair = fixtures::weak_pair();
        assert!(matches!(
            pair.build_tensor(),
            Err(OperatorError::NotStrict(Admissibility::Weak))
        ));
    }

    #[test]
    fn weak_pair_matches_its_written_tensor() {
        let pair = fixtures::weak_pair();
        let tensor = fixtures::weak_pair_tensor();
        assert!(pair.matches_tensor(&tensor));
        // A strict pair's own tensor always matches in the symmetrized sense.
        let cone = fixtures::cone_family([ratio(2, 3), ratio(5, 6), ratio(1, 1)]).unwrap();
        assert!(cone.matches_tensor(&cone.build_tensor().unwrap()));
        // ...but the weak pair does not factor the cone fixture's tensor.
        assert!(!pair.matches_tensor(&cone.build_tensor().unwrap()));
    }

    #[test]
    fn classification_of_the_three_fixtures() {
        let constant = fixtures::constant_pair();
        match constant.classify().unwrap() {
            Classification::Constant { point } => {
                assert_eq!(point, vec![ratio(1, 2), ratio(1, 2)]);
            }
            other => panic!("expected Constant, got {other:?}"),
        }

        let cyclic = fixtures::cyclic_permutation_pair();
        match cyclic.classify().unwrap() {
            Classification::Linear { matrix } => {
                assert_eq!(&matrix, cyclic.matrix_a());
                // The payload is exactly row-stochastic.
                for i in 0..matrix.rows() {
                    let row_sum: Rational = matrix.row(i).iter().sum();
                    assert!(row_sum.is_one());
                    assert!(matrix.row(i).iter().all(|v| !v.is_negative()));
                }
            }
            other => panic!("expected Linear, got {other:?}"),
        }

        let cone = fixtures::cone_family([ratio(2, 3), ratio(5, 6), ratio(1, 1)]).unwrap();
        assert_eq!(cone.classify().unwrap(), Classification::Nonlinear);
    }

    #[test]
    fn classify_needs_a_strict_pair() {
        let pair = fixtures::weak_pair();
        assert!(matches!(
            pair.classify(),
            Err(OperatorError::NotStrict(Admissibility::Weak))
        ));
    }

    #[test]
    fn weak_pair_closed_form_at_uniform_point() {
        // x' = (x2^2, x1(x1 + 2x2 + 2x3), x3(2x2 + x3)) at the uniform point.
        let pair = fixtures::weak_pair();
        let y = pair.apply(&SimplexPoint::uniform(3)).unwrap();
        let expected = [1.0 / 9.0, 5.0 / 9.0, 3.0 / 9.0];
        for (got, want) in y.coords().iter().zip(expected) {
            assert!((got - want).abs() <= 2e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn vertex_input_selects_first_rows() {
        let pair = fixtures::cone_family([ratio(2, 3), ratio(5, 6), ratio(1, 1)]).unwrap();
        let y = pair.apply(&SimplexPoint::vertex(3, 0)).unwrap();
        assert_eq!(y.coords(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn identity_pair_applies_as_identity() {
        let pair = fixtures::identity_pair(3);
        assert_eq!(pair.admissibility(), Admissibility::Strict);
        let x = SimplexPoint::new(vec![0.2, 0.5, 0.3]).unwrap();
        let y = pair.apply(&x).unwrap();
        assert_eq!(y.coords(), x.coords());
    }

    #[test]
    fn tensor_and_pair_agree_on_strict_fixtures() {
        let pair = fixtures::cone_family([ratio(2, 3), ratio(5, 6), ratio(1, 1)]).unwrap();
        let tensor = pair.build_tensor().unwrap();
        let x = SimplexPoint::new(vec![0.3, 0.45, 0.25]).unwrap();
        let via_pair = pair.apply(&x).unwrap();
        let via_tensor = tensor.apply(&x).unwrap();
        assert!(via_pair.l1_distance(&via_tensor) <= 1e-13);
    }
}
