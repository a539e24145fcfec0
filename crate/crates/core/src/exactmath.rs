//! Exact integer and rational linear algebra.
//!
//! Determinants and ranks use fraction-free (Bareiss) elimination over
//! [`BigInt`]. Small integer inputs take an `i128` path first and fall back to
//! arbitrary precision as soon as any intermediate product overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

/// A lattice point or integer direction.
///
/// Coordinates are fixed-width; polytope construction bounds their magnitude
/// so sums and dilates stay in range (see [`crate::polytope::COORD_LIMIT`]).
pub type IntVector = Vec<i64>;

/// Rectangular matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::Ragged {
                    row,
                    expected: ncols,
                    got: r.len(),
                });
            }
        }
        Ok(Self { rows, ncols })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Self { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    /// `self * x` over the rationals.
    pub fn mul_rational(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + Rational::from(a.clone()) * b)
            })
            .collect()
    }
}

/// Divides `v` by the gcd of its coordinates.
pub fn primitive(v: &[i64]) -> Result<IntVector> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

pub fn primitive_big(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(bareiss_det(m.rows.clone()))
}

/// Determinant of a square `i64` matrix, given row by row.
pub fn det_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<BigInt> {
    let n = rows.len();
    let mut work = Vec::with_capacity(n);
    for (row, r) in rows.iter().enumerate() {
        let r = r.as_ref();
        if r.len() != n {
            return Err(if row == 0 {
                Error::NotSquare { rows: n, cols: r.len() }
            } else {
                Error::Ragged { row, expected: n, got: r.len() }
            });
        }
        work.push(r.iter().map(|&x| x as i128).collect::<Vec<_>>());
    }
    if let Some(d) = bareiss_det_i128(work) {
        return Ok(BigInt::from(d));
    }
    det_exact(&IntMatrix::from_i64_rows(rows)?)
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn bareiss_det_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    bareiss_rank(m.rows.clone(), m.ncols)
}

pub fn rank_i64<R: AsRef<[i64]>>(rows: &[R]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.as_ref().len());
    let work = rows
        .iter()
        .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank(work, ncols)
}

/// Rank of rational rows; each row is scaled to integers independently.
pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    bareiss_rank(rows.iter().map(|r| clear_denominators(r).0).collect(), ncols)
}

/// Scales a rational row to a primitive-free integer row, returning the scale.
pub(crate) fn clear_denominators(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = row.iter().map(|x| (x * Rational::from(l.clone())).to_integer()).collect();
    (ints, l)
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Outcome of [`solve_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    NoSolution,
    Underdetermined,
}

/// Solves `a * x = b` exactly.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Result<Solution> {
    if b.len() != a.nrows() {
        return Err(Error::Ragged {
            row: a.nrows(),
            expected: a.nrows(),
            got: b.len(),
        });
    }
    let n = a.ncols();
    let mut m: Vec<Vec<Rational>> = a
        .rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            r.iter()
                .chain(std::iter::once(bi))
                .map(|x| Rational::from(x.clone()))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(Solution::NoSolution);
    }
    if pivots.len() < n {
        return Ok(Solution::Underdetermined);
    }
    Ok(Solution::Unique((0..n).map(|i| m[i][n].clone()).collect()))
}

/// Cofactor normal of the hyperplane spanned by the `d-1` rows of a
/// `(d-1) x d` matrix. Zero iff the rows are dependent.
pub fn cofactor_normal<R: AsRef<[i64]>>(rows: &[R], d: usize) -> Result<Vec<BigInt>> {
    let mut normal = Vec::with_capacity(d);
    for skip in 0..d {
        let minor: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let m = det_i64(&minor)?;
        normal.push(if skip % 2 == 0 { m } else { -m });
    }
    Ok(normal)
}

/// Absolute value of a determinant given as rational rows.
pub fn abs_det_rational(rows: &[Vec<Rational>]) -> Result<Rational> {
    let mut scale = BigInt::one();
    let mut ints = Vec::with_capacity(rows.len());
    for r in rows {
        let (row, l) = clear_denominators(r);
        scale *= l;
        ints.push(row);
    }
    let det = det_exact(&IntMatrix::new(ints)?)?;
    Ok(Rational::new(det.abs(), scale))
}
