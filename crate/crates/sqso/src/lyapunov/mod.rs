//! Linear Lyapunov certificates for separable operators.
//!
//! For a strictly admissible pair in the admissible family with all
//! entries in `[0, 1]`, every nonnegative vector `c` with `Ac <= c` (or
//! `Bc <= c`) makes `psi_c(x) = sum c_k x_k` non-increasing along
//! trajectories. The set of such vectors is a polyhedral cone; this
//! module enumerates its extreme rays exactly and verifies certificates
//! along recorded trajectories.

mod certificate;
mod cone;

pub use certificate::{
    attach_certificate_trace, verify_monotone, CertificateError, LyapunovCertificate,
    MonotoneReport,
};

use crate::numerics::{Rational, RationalMatrix};
use crate::operators::SqsoPair;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Which matrix of the pair a cone or certificate was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSide {
    FromA,
    FromB,
}

impl ConeSide {
    pub fn label(self) -> &'static str {
        match self {
            ConeSide::FromA => "A",
            ConeSide::FromB => "B",
        }
    }
}

/// The extreme rays of `{c >= 0 : (M - I)c <= 0}` as primitive integer
/// vectors, sorted lexicographically. Empty iff the cone is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayBasis {
    m: usize,
    source: ConeSide,
    rays: Vec<Vec<BigInt>>,
}

impl RayBasis {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn source(&self) -> ConeSide {
        self.source
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    /// One linear certificate per ray.
    pub fn certificates(&self) -> Vec<LyapunovCertificate> {
        self.rays
            .iter()
            .map(|ray| LyapunovCertificate::from_ray(ray).expect("rays are nonzero nonnegative"))
            .collect()
    }
}

/// Enumerates the complete set of extreme rays of
/// `{c >= 0 : (M - I)c <= 0}` with exact arithmetic.
pub fn cone_extreme_rays(matrix: &RationalMatrix, source: ConeSide) -> RayBasis {
    RayBasis {
        m: matrix.rows(),
        source,
        rays: cone::extreme_rays(matrix),
    }
}

/// Both cones of a pair, A side first.
pub fn pair_cones(pair: &SqsoPair) -> (RayBasis, RayBasis) {
    (
        cone_extreme_rays(pair.matrix_a(), ConeSide::FromA),
        cone_extreme_rays(pair.matrix_b(), ConeSide::FromB),
    )
}

/// Exact membership test: `c >= 0` and `(M - I)c <= 0`.
pub fn cone_membership(matrix: &RationalMatrix, c: &[Rational]) -> bool {
    if !matrix.is_square() || matrix.rows() != c.len() {
        return false;
    }
    if c.iter().any(Signed::is_negative) {
        return false;
    }
    for i in 0..matrix.rows() {
        let mut acc = -c[i].clone();
        for (j, cj) in c.iter().enumerate() {
            acc += matrix.get(i, j) * cj;
        }
        if acc.is_positive() {
            return false;
        }
    }
    true
}

/// The row-sum cone member: when every row of `M` sums to at most one,
/// the vector of row sums lies in the cone. Absence of this candidate
/// says nothing about the cone being trivial.
pub fn rowsum_candidate(matrix: &RationalMatrix) -> Option<Vec<Rational>> {
    if !matrix.is_square() {
        return None;
    }
    let one = Rational::one();
    let mut sums = Vec::with_capacity(matrix.rows());
    for i in 0..matrix.rows() {
        let mut sum = Rational::zero();
        for j in 0..matrix.cols() {
            sum += matrix.get(i, j);
        }
        if sum > one {
            return None;
        }
        sums.push(sum);
    }
    Some(sums)
}

/// Preconditions under which cone membership certifies a Lyapunov
/// function. Claims are only certified when all flags hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificationReport {
    pub entries_in_unit_interval_a: bool,
    pub entries_in_unit_interval_b: bool,
    pub in_admissible_family: bool,
}

impl CertificationReport {
    pub fn certified(&self) -> bool {
        self.entries_in_unit_interval_a
            && self.entries_in_unit_interval_b
            && self.in_admissible_family
    }
}

pub fn certification_preconditions(pair: &SqsoPair) -> CertificationReport {
    CertificationReport {
        entries_in_unit_interval_a: pair.matrix_a().all_entries_in_unit_interval(),
        entries_in_unit_interval_b: pair.matrix_b().all_entries_in_unit_interval(),
        in_admissible_family: pair.in_admissible_family(),
    }
}

/// True iff every linear form of the certificate lies in the A-side or
/// B-side cone of the pair (each form may pick its own side).
pub fn certificate_in_cones(pair: &SqsoPair, cert: &LyapunovCertificate) -> bool {
    let member = |form: &[Rational]| {
        cone_membership(pair.matrix_a(), form) || cone_membership(pair.matrix_b(), form)
    };
    match cert {
        LyapunovCertificate::Linear { weights } => member(weights),
        LyapunovCertificate::Product { forms, .. } => forms.iter().all(|f| member(f)),
    }
}
