//! Separable quadratic stochastic operators on the probability simplex.
//!
//! A quadratic stochastic operator evolves a population distribution by
//! `x'_k = sum_{i,j} P[i][j][k] x_i x_j`. This crate handles the separable
//! case, where the heredity tensor factors through a matrix pair `(A, B)`
//! as `P[i][j][k] = a_ik * b_jk`:
//!
//! - exact validation of tensors and pairs (strict and symmetrized
//!   factorizations) and the constant / linear / nonlinear classification;
//! - trajectory simulation with convergence and cycle detection;
//! - exact enumeration of the polyhedral cone of linear Lyapunov
//!   certificates `{c >= 0 : Ac <= c}` via the double description method;
//! - upper estimation of omega-limit sets from certified Lyapunov levels.
//!
//! Validation and cone arithmetic are exact (arbitrary-precision
//! rationals); dynamics run in `f64`. See the `examples/` directory for a
//! runnable tour and the `sqso` binary for the command-line interface.

pub mod cli;
pub mod dynamics;
pub mod fixtures;
pub mod lyapunov;
pub mod numerics;
pub mod omega;
pub mod operators;
pub mod simplex;

pub use dynamics::{detect_limit, iterate, LimitReport, StopReason, TrajectoryRecord};
pub use lyapunov::{
    certification_preconditions, cone_extreme_rays, cone_membership, rowsum_candidate,
    verify_monotone, CertificationReport, ConeSide, LyapunovCertificate, RayBasis,
};
pub use numerics::{parse_rational, ratio, Rational, RationalMatrix};
pub use omega::{
    empirical_omega, estimate_lambda, omega_upper_set, LambdaEstimate, OmegaEstimate,
    StoppingConfig,
};
pub use operators::{
    Admissibility, Classification, CubicTensor, OperatorError, SimplexMap, SqsoPair,
    VolterraOperator,
};
pub use simplex::{SimplexError, SimplexPoint};
