//! Shared generators and oracles for the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sqso::numerics::primitive_vector;
use sqso::{ratio, Rational, RationalMatrix, SimplexPoint, SqsoPair, VolterraOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn random_simplex_point(rng: &mut impl Rng, m: usize) -> SimplexPoint {
    let mut raw: Vec<f64> = (0..m).map(|_| -rng.gen::<f64>().max(1e-12).ln()).collect();
    let sum: f64 = raw.iter().sum();
    for value in &mut raw {
        *value /= sum;
    }
    SimplexPoint::new(raw).expect("normalized weights are a simplex point")
}

/// Random rational in `[0, 1]`.
pub fn random_unit_rational(rng: &mut impl Rng) -> Rational {
    let den = rng.gen_range(1..=12i64);
    let num = rng.gen_range(0..=den);
    ratio(num, den)
}

/// Random rational in `[2/3, 1]`, the valid range of the cone family.
pub fn random_cone_parameter(rng: &mut impl Rng) -> Rational {
    ratio(2, 3) + ratio(1, 3) * random_unit_rational(rng)
}

/// Strict pair of the constant class together with its payload.
pub fn random_constant_pair(rng: &mut impl Rng, m: usize) -> (SqsoPair, Vec<Rational>) {
    let weights: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let payload: Vec<Rational> = weights.iter().map(|&w| ratio(w, total)).collect();
    let u: Vec<Rational> = (0..m)
        .map(|_| ratio(rng.gen_range(1..=6), rng.gen_range(1..=6)))
        .collect();
    let v: Vec<Rational> = payload.iter().zip(&u).map(|(p, uk)| p / uk).collect();
    let a = RationalMatrix::from_rows(vec![u; m]).unwrap();
    let b = RationalMatrix::from_rows(vec![v; m]).unwrap();
    (SqsoPair::validate(a, b).unwrap(), payload)
}

/// Strict pair of the linear class (invertible `A`, `B` with identical
/// rows) together with its row-stochastic payload.
pub fn random_linear_pair(rng: &mut impl Rng, m: usize) -> (SqsoPair, RationalMatrix) {
    loop {
        let v: Vec<Rational> = (0..m)
            .map(|_| ratio(rng.gen_range(1..=5), rng.gen_range(1..=5)))
            .collect();
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let raw: Vec<Rational> = (0..m)
                .map(|_| ratio(rng.gen_range(0..=6), 1))
                .collect();
            let scale: Rational = raw.iter().zip(&v).map(|(r, vk)| r * vk).sum();
            if scale.is_zero() {
                rows.clear();
                break;
            }
            rows.push(raw.into_iter().map(|r| r / &scale).collect::<Vec<_>>());
        }
        if rows.len() != m {
            continue;
        }
        let a = RationalMatrix::from_rows(rows).unwrap();
        if a.determinant().unwrap().is_zero() {
            continue;
        }
        let b = RationalMatrix::from_rows(vec![v.clone(); m]).unwrap();
        let pair = SqsoPair::validate(a.clone(), b).unwrap();
        let mut payload_entries = Vec::with_capacity(m * m);
        for i in 0..m {
            for (k, vk) in v.iter().enumerate() {
                payload_entries.push(vk * a.get(i, k));
            }
        }
        let payload = RationalMatrix::new(m, m, payload_entries).unwrap();
        return (pair, payload);
    }
}

/// Random skew interaction form with entries in `[-1, 1]`.
pub fn random_volterra(rng: &mut impl Rng, m: usize) -> VolterraOperator {
    let mut skew = vec![0.0; m * m];
    for k in 0..m {
        for i in 0..k {
            let a: f64 = rng.gen_range(-1.0..=1.0);
            skew[k * m + i] = a;
            skew[i * m + k] = -a;
        }
    }
    VolterraOperator::new(m, skew).unwrap()
}

/// Random square matrix with rational entries in `[0, 1]`, mixing in
/// exact zeros and ones to hit degenerate cone geometry.
pub fn random_unit_matrix(rng: &mut impl Rng, m: usize) -> RationalMatrix {
    let entries: Vec<Rational> = (0..m * m)
        .map(|_| match rng.gen_range(0..6) {
            0 => Rational::zero(),
            1 => Rational::one(),
            _ => random_unit_rational(rng),
        })
        .collect();
    RationalMatrix::new(m, m, entries).unwrap()
}

/// Integer-cleared constraint rows of `{c >= 0, (M - I)c <= 0}`:
/// the orthant rows followed by the rows of `(I - M)`.
pub fn cone_constraints(matrix: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let m = matrix.rows();
    let mut constraints = Vec::with_capacity(2 * m);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); m];
        row[i] = BigInt::one();
        constraints.push(row);
    }
    for i in 0..m {
        let mut lcm = BigInt::one();
        for j in 0..m {
            lcm = lcm.lcm(matrix.get(i, j).denom());
        }
        let row: Vec<BigInt> = (0..m)
            .map(|j| {
                let v = matrix.get(i, j);
                let mut scaled = -(v.numer() * (&lcm / v.denom()));
                if i == j {
                    scaled += &lcm;
                }
                scaled
            })
            .collect();
        constraints.push(row);
    }
    constraints
}

fn satisfies_all(constraints: &[Vec<BigInt>], d: &[BigInt]) -> bool {
    constraints.iter().all(|h| {
        let dot: BigInt = h.iter().zip(d).map(|(a, b)| a * b).sum();
        !dot.is_negative()
    })
}

fn push_candidate(found: &mut Vec<Vec<BigInt>>, constraints: &[Vec<BigInt>], d: Vec<BigInt>) {
    if d.iter().all(Zero::is_zero) {
        return;
    }
    if !satisfies_all(constraints, &d) {
        return;
    }
    let p = primitive_vector(d);
    if !found.contains(&p) {
        found.push(p);
    }
}

/// Independent extreme-ray oracle for m <= 3: every extreme ray of a
/// pointed cone is tight on a rank (m-1) subset of the constraints, so it
/// shows up as (the sign-corrected) kernel direction of single
/// constraints (m = 2) or constraint pairs (m = 3).
pub fn brute_force_rays(matrix: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let m = matrix.rows();
    assert!((1..=3).contains(&m), "oracle supports m in 1..=3");
    let constraints = cone_constraints(matrix);
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    match m {
        1 => {
            push_candidate(&mut found, &constraints, vec![BigInt::one()]);
        }
        2 => {
            for h in &constraints {
                let d = vec![h[1].clone(), -h[0].clone()];
                let neg = vec![-h[1].clone(), h[0].clone()];
                push_candidate(&mut found, &constraints, d);
                push_candidate(&mut found, &constraints, neg);
            }
        }
        3 => {
            for (idx, hi) in constraints.iter().enumerate() {
                for hj in constraints.iter().skip(idx + 1) {
                    let d = vec![
                        &hi[1] * &hj[2] - &hi[2] * &hj[1],
                        &hi[2] * &hj[0] - &hi[0] * &hj[2],
                        &hi[0] * &hj[1] - &hi[1] * &hj[0],
                    ];
                    let neg: Vec<BigInt> = d.iter().map(|v| -v).collect();
                    push_candidate(&mut found, &constraints, d);
                    push_candidate(&mut found, &constraints, neg);
                }
            }
        }
        _ => unreachable!(),
    }
    found.sort();
    found
}

pub fn bigvec(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}
