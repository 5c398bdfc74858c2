//! Bundled operator fixtures.
//!
//! Small, exactly-known pairs used across tests, examples, and the CLI
//! fixture files. The two parameterized families are templates: any
//! parameter choice in the documented range yields a strictly admissible
//! pair.

use crate::numerics::{ratio, Rational, RationalMatrix};
use crate::operators::{CubicTensor, OperatorError, SqsoPair};
use num_traits::{One, Zero};

fn matrix(rows: Vec<Vec<Rational>>) -> RationalMatrix {
    RationalMatrix::from_rows(rows).expect("fixture shape")
}

/// The canonical weakly admissible pair. Its operator has the closed form
/// `x' = (x2^2, x1(x1 + 2x2 + 2x3), x3(2x2 + x3))`; no entrywise
/// factorization exists because one coefficient would have to be both 0
/// and 1.
pub fn weak_pair() -> SqsoPair {
    let a = matrix(vec![
        vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
        vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)],
        vec![ratio(0, 1), ratio(0, 1), ratio(1, 1)],
    ]);
    let b = matrix(vec![
        vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
        vec![ratio(1, 1), ratio(2, 1), ratio(2, 1)],
        vec![ratio(0, 1), ratio(2, 1), ratio(1, 1)],
    ]);
    SqsoPair::validate(a, b).expect("fixture dimensions")
}

/// A stochastic tensor that the weak pair factors in the symmetrized
/// sense: mass sits on `P[1][1][0]`, `P[0][0][1]`, the symmetric slots
/// `P[0][2][1] = P[2][0][1] = 1`, `P[0][1][1] = P[1][0][1] = 1`, and the
/// third-species slots.
pub fn weak_pair_tensor() -> CubicTensor {
    let mut entries = vec![Rational::zero(); 27];
    let mut set = |i: usize, j: usize, k: usize| {
        entries[(i * 3 + j) * 3 + k] = Rational::one();
    };
    set(0, 2, 1);
    set(2, 0, 1);
    set(1, 1, 0);
    set(0, 0, 1);
    set(0, 1, 1);
    set(1, 0, 1);
    set(1, 2, 2);
    set(2, 1, 2);
    set(2, 2, 2);
    CubicTensor::new(3, entries).expect("fixture tensor")
}

/// Strict three-species family with duplicated rows in `B`:
/// `A` has rows `(b, y_i, 1 - y_i)` and
/// `B = [(0,1,1), (0,1,1), (1/(2b), 1/2, 1/2)]`.
/// Valid for `b > 0` and `y_i` in `[0, 1]`; both determinants vanish while
/// neither matrix has all rows identical (for distinct `y_i`).
pub fn duplicate_row_family(b: Rational, y: [Rational; 3]) -> Result<SqsoPair, OperatorError> {
    let one = Rational::one();
    let a = matrix(
        y.iter()
            .map(|yi| vec![b.clone(), yi.clone(), &one - yi])
            .collect(),
    );
    let half = ratio(1, 2);
    let b_mat = matrix(vec![
        vec![Rational::zero(), one.clone(), one.clone()],
        vec![Rational::zero(), one.clone(), one.clone()],
        vec![&half / &b, half.clone(), half.clone()],
    ]);
    SqsoPair::validate(a, b_mat)
}

/// Strict three-species family with a rich Lyapunov cone on the `A` side
/// and a trivial one on the `B` side. `A` is fixed; `B` has rows
/// `(1, (8 - 3 b_j) / 6, b_j)` for parameters `b_j` in `[2/3, 1]`.
pub fn cone_family(b: [Rational; 3]) -> Result<SqsoPair, OperatorError> {
    let a = matrix(vec![
        vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)],
        vec![ratio(1, 3), ratio(1, 2), ratio(1, 4)],
        vec![ratio(2, 3), ratio(1, 4), ratio(1, 8)],
    ]);
    let six = ratio(6, 1);
    let eight = ratio(8, 1);
    let three = ratio(3, 1);
    let b_mat = matrix(
        b.iter()
            .map(|bj| vec![Rational::one(), (&eight - &three * bj) / &six, bj.clone()])
            .collect(),
    );
    SqsoPair::validate(a, b_mat)
}

/// The cone family at its canonical parameters `b = (2/3, 5/6, 1)`.
pub fn cone_family_canonical() -> SqsoPair {
    cone_family([ratio(2, 3), ratio(5, 6), ratio(1, 1)]).expect("fixture dimensions")
}

/// Constant-class pair: both matrices have identical rows, every point
/// maps to `(1/2, 1/2)`.
pub fn constant_pair() -> SqsoPair {
    let a = matrix(vec![
        vec![ratio(1, 1), ratio(1, 1)],
        vec![ratio(1, 1), ratio(1, 1)],
    ]);
    let b = matrix(vec![
        vec![ratio(1, 2), ratio(1, 2)],
        vec![ratio(1, 2), ratio(1, 2)],
    ]);
    SqsoPair::validate(a, b).expect("fixture dimensions")
}

/// Linear-class pair whose payload is the cyclic permutation matrix of
/// order three: `A` columns `(0,0,1), (1,0,0), (0,1,0)` and `B` all ones.
pub fn cyclic_permutation_pair() -> SqsoPair {
    let a = matrix(vec![
        vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
        vec![ratio(0, 1), ratio(0, 1), ratio(1, 1)],
        vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)],
    ]);
    let b = RationalMatrix::ones(3);
    SqsoPair::validate(a, b).expect("fixture dimensions")
}

/// Strict pair acting as the identity map: `A = I`, `B` all ones.
pub fn identity_pair(m: usize) -> SqsoPair {
    SqsoPair::validate(RationalMatrix::identity(m), RationalMatrix::ones(m))
        .expect("fixture dimensions")
}
