//! Exact rational linear algebra: the linear map combining pairs of
//! individual vectors, Gaussian-elimination rank, and inversion.

// Elimination is written with explicit indices.
#![allow(clippy::needless_range_loop)]

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::GeometryError;

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(dim: usize) -> Vec<Q> {
    (0..dim).map(|_| Q::zero()).collect()
}

/// `e_i` in the given dimension (0-based index).
pub fn basis_vec(dim: usize, i: usize) -> Vec<Q> {
    let mut v = zero_vec(dim);
    v[i] = Q::one();
    v
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn midpoint(a: &[Q], b: &[Q]) -> Vec<Q> {
    let half = q_ratio(1, 2);
    vec_add(&vec_scale(a, &half), &vec_scale(b, &half))
        .into_iter()
        .collect()
}

pub fn mat_vec(rows: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Q::zero(), |acc, (a, x)| acc + a * x)
        })
        .collect()
}

/// Rank by exact Gaussian elimination (partial pivoting on magnitude is
/// unnecessary with rationals; the first nonzero entry is used).
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        let p = m[row][col].clone();
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let factor = &m[r][col] / &p;
                for c in col..ncols {
                    let sub = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn invert(rows: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| basis_vec(n, i)).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] = &a[col][c] / &p;
            inv[col][c] = &inv[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..n {
                    let s1 = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &s1;
                    let s2 = &factor * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &s2;
                }
            }
        }
    }
    Some(inv)
}

/// The linear map `f : R^m × R^m -> R^{2m}`, stored as its `2m × 2m`
/// matrix over concatenated inputs. The inverse is cached once computed.
#[derive(Clone, Debug)]
pub struct LinearMap {
    m: usize,
    rows: Vec<Vec<Q>>,
    inv: Option<Vec<Vec<Q>>>,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.rows == other.rows
    }
}

impl Eq for LinearMap {}

impl LinearMap {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self, GeometryError> {
        let dim = rows.len();
        if dim == 0 || !dim.is_multiple_of(2) || rows.iter().any(|r| r.len() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                got: rows.iter().map(Vec::len).max().unwrap_or(0),
            });
        }
        Ok(LinearMap {
            m: dim / 2,
            rows,
            inv: None,
        })
    }

    /// Vector concatenation: the identity matrix.
    pub fn concatenation(m: usize) -> Self {
        let dim = 2 * m;
        LinearMap {
            m,
            rows: (0..dim).map(|i| basis_vec(dim, i)).collect(),
            inv: Some((0..dim).map(|i| basis_vec(dim, i)).collect()),
        }
    }

    /// The half-swap map `(u, v) -> v ⊕ u`.
    pub fn half_swap(m: usize) -> Self {
        let dim = 2 * m;
        let rows = (0..dim)
            .map(|i| basis_vec(dim, (i + m) % dim))
            .collect();
        LinearMap { m, rows, inv: None }
    }

    pub fn half_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// `f(u, v)` on the concatenated input.
    pub fn apply_pair(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut w = Vec::with_capacity(self.dim());
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        mat_vec(&self.rows, &w)
    }

    pub fn apply(&self, w: &[Q]) -> Vec<Q> {
        mat_vec(&self.rows, w)
    }

    /// Caches and returns the inverse matrix; `SingularMap` if none exists.
    pub fn ensure_inverse(&mut self) -> Result<&Vec<Vec<Q>>, GeometryError> {
        if self.inv.is_none() {
            self.inv = Some(invert(&self.rows).ok_or(GeometryError::SingularMap)?);
        }
        Ok(self.inv.as_ref().expect("just set"))
    }

    pub fn apply_inverse(&self, w: &[Q]) -> Result<Vec<Q>, GeometryError> {
        let inv = self.inv.as_ref().ok_or(GeometryError::UnvalidatedMap)?;
        Ok(mat_vec(inv, w))
    }

    /// Splits a `2m` vector into its halves.
    pub fn split<'a>(&self, w: &'a [Q]) -> (&'a [Q], &'a [Q]) {
        w.split_at(self.m)
    }
}

/// Conditions (i)-(iii) on the combining map: the restrictions to
/// `R^m × {0}` and `{0} × R^m` are injective and their images meet only in
/// the origin. Checked as rank conditions by exact elimination: the left
/// `m` columns have rank `m`, the right `m` columns have rank `m`, and the
/// full matrix has rank `2m`.
pub fn validate_linear_map(f: &LinearMap) -> bool {
    let m = f.half_dim();
    let dim = f.dim();
    let column_block = |from: usize, to: usize| -> Vec<Vec<Q>> {
        f.rows
            .iter()
            .map(|row| row[from..to].to_vec())
            .collect()
    };
    rank(&column_block(0, m)) == m
        && rank(&column_block(m, dim)) == m
        && rank(&f.rows) == dim
}

/// Signum helper used when normalizing LP rows.
pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn concatenation_validates() {
        let f = LinearMap::concatenation(2);
        assert!(validate_linear_map(&f));
    }

    #[test]
    fn zero_column_fails_validation() {
        let mut rows: Vec<Vec<Q>> = (0..4).map(|i| basis_vec(4, i)).collect();
        for row in &mut rows {
            row[1] = Q::zero();
        }
        let f = LinearMap::new(rows).unwrap();
        assert!(!validate_linear_map(&f));
    }

    #[test]
    fn half_swap_validates_and_inverts() {
        let mut f = LinearMap::half_swap(2);
        assert!(validate_linear_map(&f));
        f.ensure_inverse().unwrap();
        let u = vec![q_int(1), q_int(2)];
        let v = vec![q_int(3), q_int(4)];
        let w = f.apply_pair(&u, &v);
        assert_eq!(w, vec![q_int(3), q_int(4), q_int(1), q_int(2)]);
        let back = f.apply_inverse(&w).unwrap();
        assert_eq!(back, vec![q_int(1), q_int(2), q_int(3), q_int(4)]);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![q_int(1), q_int(2)],
            vec![q_int(2), q_int(4)],
        ];
        assert_eq!(rank(&rows), 1);
    }

    #[test]
    fn invert_round_trips() {
        let rows = vec![
            vec![q_int(2), q_int(1)],
            vec![q_int(1), q_int(1)],
        ];
        let inv = invert(&rows).unwrap();
        let v = vec![q_int(5), q_int(7)];
        let w = mat_vec(&rows, &v);
        assert_eq!(mat_vec(&inv, &w), v);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let rows = vec![
            vec![q_int(1), q_int(2)],
            vec![q_int(2), q_int(4)],
        ];
        assert!(invert(&rows).is_none());
    }
}
