//! Exact rational scalars and matrices.
//!
//! Everything that feeds a classification or cone decision is computed here
//! with arbitrary-precision rationals: the case split is on `det == 0`
//! exactly, so there is no tolerance to tune. Determinant and rank use
//! fraction-free (Bareiss) elimination over integers after clearing
//! denominators, which keeps intermediate entries bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Exact rational scalar. Always held in canonical form: positive
/// denominator, numerator and denominator coprime.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("denominator must be positive in `{0}`")]
    NegativeDenominator(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry count {entries} does not match {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        entries: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
}

/// Convenience constructor for small literals in tests and fixtures.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p/q`, a decimal literal, or a plain integer into a canonical
/// rational. Decimals convert exactly through powers of ten, so `0.25`
/// is `1/4` and `1/3` stays `1/3`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());

    if let Some((num_part, den_part)) = trimmed.split_once('/') {
        let numer = parse_int(num_part).ok_or_else(malformed)?;
        let denom_text = den_part.trim();
        if denom_text.starts_with('-') || denom_text.starts_with('+') {
            return Err(ParseRationalError::NegativeDenominator(text.to_string()));
        }
        let denom = parse_int(denom_text).ok_or_else(malformed)?;
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(numer, denom));
    }

    if let Some((int_part, frac_part)) = trimmed.split_once('.') {
        let (sign, int_digits) = split_sign(int_part);
        let frac_digits = frac_part.trim();
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_digits.is_empty())
        {
            return Err(malformed());
        }
        let mut digits = String::with_capacity(int_digits.len() + frac_digits.len());
        digits.push_str(int_digits);
        digits.push_str(frac_digits);
        if digits.is_empty() {
            return Err(malformed());
        }
        let magnitude = BigInt::from_str(&digits).map_err(|_| malformed())?;
        let numer = if sign < 0 { -magnitude } else { magnitude };
        let denom = BigInt::from(10u32).pow(frac_digits.len() as u32);
        return Ok(Rational::new(numer, denom));
    }

    let numer = parse_int(trimmed).ok_or_else(malformed)?;
    Ok(Rational::from_integer(numer))
}

fn parse_int(text: &str) -> Option<BigInt> {
    let t = text.trim();
    let (sign, digits) = split_sign(t);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let magnitude = BigInt::from_str(digits).ok()?;
    Some(if sign < 0 { -magnitude } else { magnitude })
}

fn split_sign(text: &str) -> (i32, &str) {
    if let Some(rest) = text.strip_prefix('-') {
        (-1, rest)
    } else if let Some(rest) = text.strip_prefix('+') {
        (1, rest)
    } else {
        (1, text)
    }
}

/// Rounds a canonical rational to the nearest `f64`. This is the single
/// crossing point from exact arithmetic into floating-point dynamics.
pub fn rational_to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                entries: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let row_count = rows.len();
        let col_count = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(row_count * col_count);
        for row in &rows {
            if row.len() != col_count {
                return Err(MatrixError::ShapeMismatch {
                    rows: row_count,
                    cols: col_count,
                    entries: row_count * col_count + row.len() - col_count,
                });
            }
            entries.extend(row.iter().cloned());
        }
        Self::new(row_count, col_count, entries)
    }

    /// Parses a grid of rational literals, as found in model files.
    pub fn parse_rows(rows: &[Vec<String>]) -> Result<Self, ParseRationalError> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        Self::from_rows(parsed).map_err(|_| ParseRationalError::Malformed("ragged rows".into()))
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn ones(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: vec![Rational::one(); n * n],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, other.cols, entries)
    }

    /// True iff every row equals the first row exactly.
    pub fn rows_identical(&self) -> bool {
        if self.rows <= 1 {
            return true;
        }
        let first = self.row(0);
        (1..self.rows).all(|r| self.row(r) == first)
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut work, row_scales) = self.cleared_rows();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if work[k][k].is_zero() {
                match (k + 1..n).find(|&r| !work[r][k].is_zero()) {
                    Some(r) => {
                        work.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &work[k][k] * &work[i][j] - &work[i][k] * &work[k][j];
                    work[i][j] = num / &prev; // exact by Sylvester's identity
                }
                work[i][k] = BigInt::zero();
            }
            prev = work[k][k].clone();
        }
        let det_int = work[n - 1][n - 1].clone();
        let mut denom = BigInt::one();
        for s in row_scales {
            denom *= s;
        }
        let mut det = Rational::new(det_int, denom);
        if sign < 0 {
            det = -det;
        }
        Ok(det)
    }

    /// Exact rank over the rationals (fraction-free elimination with
    /// column pivoting, so rectangular and rank-deficient inputs are fine).
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let (mut work, _) = self.cleared_rows();
        let mut rank = 0usize;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let pivot = match (rank..self.rows).find(|&r| !work[r][col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            work.swap(rank, pivot);
            for i in rank + 1..self.rows {
                for j in col + 1..self.cols {
                    let num = &work[rank][col] * &work[i][j] - &work[i][col] * &work[rank][j];
                    work[i][j] = num / &prev;
                }
                work[i][col] = BigInt::zero();
            }
            prev = work[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Entries rounded to `f64`, row-major.
    pub fn to_f64_entries(&self) -> Vec<f64> {
        self.entries.iter().map(rational_to_f64).collect()
    }

    /// Clears denominators per row; returns the integer matrix and the
    /// scale factor applied to each row.
    fn cleared_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut scaled = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            let mut lcm = BigInt::one();
            for value in row {
                lcm = lcm.lcm(value.denom());
            }
            let ints = row
                .iter()
                .map(|value| value.numer() * (&lcm / value.denom()))
                .collect();
            scaled.push(ints);
            scales.push(lcm);
        }
        (scaled, scales)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduces an integer vector to its primitive form: entries divided by
/// their gcd. The zero vector stays zero; sign is left untouched.
pub fn primitive_vector(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for entry in &v {
        g = g.gcd(entry);
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    for entry in &mut v {
        *entry /= &g;
    }
    v
}

/// Scales a rational vector to a primitive integer vector pointing the
/// same way.
pub fn primitive_from_rationals(values: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for value in values {
        lcm = lcm.lcm(value.denom());
    }
    let ints: Vec<BigInt> = values
        .iter()
        .map(|value| value.numer() * (&lcm / value.denom()))
        .collect();
    primitive_vector(ints)
}

impl RationalMatrix {
    /// `self - identity`, used for the cone inequalities `(M - I)c <= 0`.
    pub fn minus_identity(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let entry = &mut out.entries[i * out.cols + i];
            *entry -= Rational::one();
        }
        Ok(out)
    }

    pub fn all_entries_in_unit_interval(&self) -> bool {
        let one = Rational::one();
        self.entries
            .iter()
            .all(|v| !v.is_negative() && *v <= one)
    }
}
