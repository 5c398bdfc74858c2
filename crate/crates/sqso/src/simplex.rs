//! Points of the probability simplex.

use thiserror::Error;

/// Largest negative coordinate tolerated (rounding noise only).
pub const COORD_SLACK: f64 = 1e-15;
/// Largest deviation of the coordinate sum from one.
pub const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SimplexError {
    #[error("simplex point must have at least one coordinate")]
    Empty,
    #[error("coordinate {index} is {value}, below the allowed slack")]
    NegativeCoordinate { index: usize, value: f64 },
    #[error("coordinates sum to {sum}, outside the tolerance around 1")]
    SumOutOfTolerance { sum: f64 },
}

/// A probability vector in floating point. Construction validates that
/// coordinates are nonnegative up to rounding slack and sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, SimplexError> {
        Self::with_tolerances(coords, COORD_SLACK, SUM_TOLERANCE)
    }

    /// Validates against caller-provided tolerances. Used where a looser
    /// contract applies (e.g. points recovered from a linear solve).
    pub fn with_tolerances(
        coords: Vec<f64>,
        coord_slack: f64,
        sum_tolerance: f64,
    ) -> Result<Self, SimplexError> {
        if coords.is_empty() {
            return Err(SimplexError::Empty);
        }
        for (index, &value) in coords.iter().enumerate() {
            if value.is_nan() || value < -coord_slack {
                return Err(SimplexError::NegativeCoordinate { index, value });
            }
        }
        let sum: f64 = coords.iter().sum();
        if sum.is_nan() || (sum - 1.0).abs() > sum_tolerance {
            return Err(SimplexError::SumOutOfTolerance { sum });
        }
        Ok(Self { coords })
    }

    /// The uniform distribution on `m` species.
    pub fn uniform(m: usize) -> Self {
        Self {
            coords: vec![1.0 / m as f64; m],
        }
    }

    /// The vertex with all mass on species `k`.
    pub fn vertex(m: usize, k: usize) -> Self {
        let mut coords = vec![0.0; m];
        coords[k] = 1.0;
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn l1_distance(&self, other: &Self) -> f64 {
        l1_distance(&self.coords, other.coords())
    }
}

pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_boundary_points() {
        let p = SimplexPoint::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.dim(), 3);
        let q = SimplexPoint::new(vec![0.5, 0.5 - 1e-13, 1e-13]).unwrap();
        assert!(q.coords()[2] > 0.0);
    }

    #[test]
    fn tolerates_rounding_noise_only() {
        assert!(SimplexPoint::new(vec![0.5, 0.5 + 1e-16, -1e-16]).is_ok());
        assert!(matches!(
            SimplexPoint::new(vec![0.6, 0.5, -0.1]),
            Err(SimplexError::NegativeCoordinate { index: 2, .. })
        ));
        assert!(matches!(
            SimplexPoint::new(vec![0.5, 0.4]),
            Err(SimplexError::SumOutOfTolerance { .. })
        ));
        assert!(SimplexPoint::new(vec![]).is_err());
        assert!(SimplexPoint::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn l1_distance_is_symmetric() {
        let p = SimplexPoint::uniform(3);
        let q = SimplexPoint::vertex(3, 0);
        assert_eq!(p.l1_distance(&q), q.l1_distance(&p));
        assert!((p.l1_distance(&q) - 4.0 / 3.0).abs() < 1e-15);
    }
}
