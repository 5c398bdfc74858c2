//! Double description enumeration of `{c >= 0 : (M - I)c <= 0}`.
//!
//! The cone is the intersection of `2m` half-spaces: the orthant rows
//! `e_i . c >= 0` and the scaled rows of `(I - M) c >= 0`. Starting from
//! the orthant, whose extreme rays are the standard basis vectors, each
//! matrix row is inserted in turn: rays on the good side survive, rays on
//! the bad side are dropped, and every adjacent (good, bad) pair spawns
//! the ray where their 2-face crosses the new hyperplane. Adjacency uses
//! the combinatorial test (no third ray is tight on a superset of the
//! pair's common tight set), which is exact for pointed cones, and the
//! cone here is pointed because it sits inside the orthant. All
//! arithmetic is integer; rays are kept primitive.

use crate::numerics::{primitive_vector, RationalMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

struct Ray {
    coords: Vec<BigInt>,
    /// Bit `i` set iff constraint `i` (in insertion order) is tight.
    tight: u128,
}

pub(crate) fn extreme_rays(matrix: &RationalMatrix) -> Vec<Vec<BigInt>> {
    assert!(matrix.is_square(), "cone matrix must be square");
    let m = matrix.rows();
    assert!(m <= 64, "cone enumeration supports at most 64 species");
    if m == 0 {
        return Vec::new();
    }

    // Constraint rows h with the cone equal to {c : h . c >= 0 for all h}.
    let mut constraints: Vec<Vec<BigInt>> = Vec::with_capacity(2 * m);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); m];
        row[i] = BigInt::from(1);
        constraints.push(row);
    }
    for i in 0..m {
        // Row i of (I - M), cleared to integers.
        let mut lcm = BigInt::from(1);
        for j in 0..m {
            lcm = lcm.lcm(matrix.get(i, j).denom());
        }
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let v = matrix.get(i, j);
            let mut scaled = -(v.numer() * (&lcm / v.denom()));
            if i == j {
                scaled += &lcm;
            }
            row.push(scaled);
        }
        constraints.push(row);
    }

    // Start from the orthant: basis vectors, tight on every other axis.
    let mut rays: Vec<Ray> = (0..m)
        .map(|j| {
            let mut coords = vec![BigInt::zero(); m];
            coords[j] = BigInt::from(1);
            let mut tight = 0u128;
            for i in 0..m {
                if i != j {
                    tight |= 1 << i;
                }
            }
            Ray { coords, tight }
        })
        .collect();

    for ci in m..2 * m {
        let constraint = &constraints[ci];
        let values: Vec<BigInt> = rays
            .iter()
            .map(|r| dot(constraint, &r.coords))
            .collect();

        if values.iter().all(|v| !v.is_negative()) {
            for (ray, value) in rays.iter_mut().zip(&values) {
                if value.is_zero() {
                    ray.tight |= 1 << ci;
                }
            }
            continue;
        }

        let positive: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let negative: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();

        let mut created: Vec<Vec<BigInt>> = Vec::new();
        for &p in &positive {
            for &n in &negative {
                if !adjacent(&rays, p, n) {
                    continue;
                }
                // (h.p) n - (h.n) p is a positive combination of p and n
                // lying on the new hyperplane.
                let coords: Vec<BigInt> = (0..m)
                    .map(|j| &values[p] * &rays[n].coords[j] - &values[n] * &rays[p].coords[j])
                    .collect();
                let coords = primitive_vector(coords);
                if !created.contains(&coords) {
                    created.push(coords);
                }
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (ray, value) in rays.drain(..).zip(values) {
            if value.is_positive() {
                next.push(ray);
            } else if value.is_zero() {
                let mut kept = ray;
                kept.tight |= 1 << ci;
                next.push(kept);
            }
        }
        for coords in created {
            let tight = tight_set(&constraints[..=ci], &coords);
            next.push(Ray { coords, tight });
        }
        rays = next;
    }

    let mut result: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    result.sort();
    result
}

/// Combinatorial adjacency: `p` and `n` span a 2-face iff no other
/// extreme ray is tight on everything they are both tight on.
fn adjacent(rays: &[Ray], p: usize, n: usize) -> bool {
    let common = rays[p].tight & rays[n].tight;
    rays.iter()
        .enumerate()
        .all(|(idx, other)| idx == p || idx == n || (common & !other.tight) != 0)
}

fn tight_set(constraints: &[Vec<BigInt>], coords: &[BigInt]) -> u128 {
    let mut tight = 0u128;
    for (i, row) in constraints.iter().enumerate() {
        if dot(row, coords).is_zero() {
            tight |= 1 << i;
        }
    }
    tight
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
