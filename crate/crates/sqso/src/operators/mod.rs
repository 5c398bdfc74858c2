//! Quadratic stochastic operators on the simplex.
//!
//! Three equivalent views of one evolution operator live here: the cubic
//! heredity tensor `P[i][j][k]`, the separable matrix pair `(A, B)` with
//! `P[i][j][k] = a_ik * b_jk`, and the Volterra normal form for tensors
//! whose offspring always inherit a parent's type. Validation and
//! classification are exact; application is floating point.

mod map;
mod pair;
mod tensor;
mod volterra;

pub(crate) use map::evaluate;
pub use map::{LinearKernel, SimplexMap, SqsoKernel, TensorKernel, RAW_SUM_TOL};
pub use pair::{Admissibility, Classification, SqsoPair};
pub use tensor::CubicTensor;
pub use volterra::VolterraOperator;

use crate::numerics::MatrixError;
use crate::simplex::SimplexError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("matrices must be square and of equal size, got {a_rows}x{a_cols} and {b_rows}x{b_cols}")]
    PairShape {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },
    #[error("operation requires a strictly admissible pair, admissibility is {0:?}")]
    NotStrict(Admissibility),
    #[error("pair is not admissible; it does not define a stochastic operator")]
    InvalidPair,
    #[error("tensor entry P[{i}][{j}][{k}] is negative")]
    NegativeTensorEntry { i: usize, j: usize, k: usize },
    #[error("tensor slice ({i},{j}) sums to {sum}, expected exactly 1")]
    SliceSum { i: usize, j: usize, sum: String },
    #[error("tensor entry count {entries} does not match m^3 for m = {m}")]
    TensorShape { m: usize, entries: usize },
    #[error("tensor is not of Volterra type: P[{i}][{j}][{k}] != 0 with k outside {{i, j}}")]
    NotVolterra { i: usize, j: usize, k: usize },
    #[error("skew matrix invariant violated: {0}")]
    SkewInvariant(String),
    #[error("operator and point dimensions differ: {op} vs {point}")]
    DimensionMismatch { op: usize, point: usize },
    #[error("operator image sums to {sum}; the kernel does not conserve total probability")]
    StochasticityDrift { sum: f64 },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
