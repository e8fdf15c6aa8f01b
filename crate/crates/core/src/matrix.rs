//! Dense matrices over the exact rings, with the signed index convention
//! 1, 2, …, n, −n, …, −1 for 2n×2n matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Laurent, Rational, Ring};

/// Display position of a signed index: `1..=n` map to `0..n`, `-n..=-1` to `n..2n`.
pub fn position_of(n: usize, i: i32) -> usize {
    debug_assert!(i != 0 && i.unsigned_abs() as usize <= n);
    if i > 0 {
        i as usize - 1
    } else {
        (2 * n as i32 + i) as usize
    }
}

/// Signed index at a display position.
pub fn index_at(n: usize, p: usize) -> i32 {
    debug_assert!(p < 2 * n);
    if p < n {
        p as i32 + 1
    } else {
        p as i32 - 2 * n as i32
    }
}

/// Signed indices in display order.
pub fn display_indices(n: usize) -> impl Iterator<Item = i32> {
    (0..2 * n).map(move |p| index_at(n, p))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for k in 0..size {
            m.set(k, k, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::SizeMismatch(c, bad.len()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(self.cols, rhs.rows));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(R, R) -> R) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::SizeMismatch(self.rows * self.cols, rhs.rows * rhs.cols));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c.clone() * x.clone()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rows `row_start..` and columns `..col_end` (display positions).
    pub fn lower_left(&self, row_start: usize, col_end: usize) -> Self {
        let mut out = Self::zeros(self.rows - row_start, col_end);
        for i in row_start..self.rows {
            for j in 0..col_end {
                out.set(i - row_start, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(usize, usize, &R) -> Result<S>) -> Result<Matrix<S>> {
        let mut data = Vec::with_capacity(self.data.len());
        for (k, x) in self.data.iter().enumerate() {
            data.push(f(k / self.cols, k % self.cols, x)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

impl Matrix<Rational> {
    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows())
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect()
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let p = &top[rank];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = &row[j] * &p[col] - &lead * &p[j];
                // exact: every entry is a minor of the original matrix
                row[j] = v / &prev;
            }
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A 2n×2n matrix addressed by signed indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndexedMatrix<R> {
    n: usize,
    m: Matrix<R>,
}

impl<R: Ring> IndexedMatrix<R> {
    pub fn zero(n: usize) -> Self {
        Self { n, m: Matrix::zeros(2 * n, 2 * n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { n, m: Matrix::identity(2 * n) }
    }

    pub fn from_matrix(n: usize, m: Matrix<R>) -> Result<Self> {
        if m.rows() != 2 * n || m.cols() != 2 * n {
            return Err(Error::SizeMismatch(2 * n, m.rows()));
        }
        Ok(Self { n, m })
    }

    /// The matrix unit e_{i,j} in signed indices.
    pub fn unit(n: usize, i: i32, j: i32) -> Self {
        let mut out = Self::zero(n);
        out.set_at(i, j, R::one());
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_matrix(&self) -> &Matrix<R> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.m
    }

    pub fn at(&self, i: i32, j: i32) -> &R {
        self.m.get(position_of(self.n, i), position_of(self.n, j))
    }

    pub fn set_at(&mut self, i: i32, j: i32, v: R) {
        self.m.set(position_of(self.n, i), position_of(self.n, j), v);
    }

    pub fn get(&self, p: usize, q: usize) -> &R {
        self.m.get(p, q)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    fn check_n(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::RankMismatch { left: self.n, right: rhs.n });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_n(rhs)?;
        Ok(Self { n: self.n, m: self.m.mul(&rhs.m)? })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_n(rhs)?;
        Ok(Self { n: self.n, m: self.m.add(&rhs.m)? })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_n(rhs)?;
        Ok(Self { n: self.n, m: self.m.sub(&rhs.m)? })
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { n: self.n, m: self.m.scale(c) }
    }

    pub fn transpose(&self) -> Self {
        Self { n: self.n, m: self.m.transpose() }
    }

    /// Strictly lower-triangular part in display order.
    pub fn lower_projection(&self) -> Self {
        let mut out = self.clone();
        for p in 0..2 * self.n {
            for q in p..2 * self.n {
                out.m.set(p, q, R::zero());
            }
        }
        out
    }

    pub fn is_strictly_lower(&self) -> bool {
        (0..2 * self.n).all(|p| (p..2 * self.n).all(|q| self.m.get(p, q).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..2 * self.n).all(|p| (0..p).all(|q| self.m.get(p, q).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..2 * self.n).all(|p| (0..2 * self.n).all(|q| p == q || self.m.get(p, q).is_zero()))
    }

    /// Unit diagonal.
    pub fn is_unipotent(&self) -> bool {
        (0..2 * self.n).all(|p| self.m.get(p, p).is_one())
    }

    /// Entries with signed indices, for sparse display.
    pub fn nonzero_entries(&self) -> Vec<(i32, i32, R)> {
        let mut out = Vec::new();
        for p in 0..2 * self.n {
            for q in 0..2 * self.n {
                let v = self.m.get(p, q);
                if !v.is_zero() {
                    out.push((index_at(self.n, p), index_at(self.n, q), v.clone()));
                }
            }
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> IndexedMatrix<S> {
        IndexedMatrix { n: self.n, m: self.m.map(f) }
    }

    /// Row-major entries as strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..2 * self.n).map(|p| self.m.row(p).iter().map(ToString::to_string).collect()).collect()
    }
}

impl IndexedMatrix<Rational> {
    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    pub fn to_laurent(&self) -> IndexedMatrix<Laurent> {
        self.map(|q| Laurent::constant(q.clone()))
    }
}

/// J = [[0, s], [−s, 0]] with s the n×n antidiagonal of ones.
pub fn symplectic_form<R: Ring>(n: usize) -> IndexedMatrix<R> {
    let mut j = IndexedMatrix::zero(n);
    // upper-right block: row p, column 2n-1-p for p < n
    for p in 0..n {
        j.m.set(p, 2 * n - 1 - p, R::one());
        j.m.set(2 * n - 1 - p, p, -R::one());
    }
    j
}

/// `gᵗ J g = J`.
pub fn is_symplectic_group<R: Ring>(g: &IndexedMatrix<R>) -> bool {
    let j = symplectic_form::<R>(g.n());
    g.transpose().mul(&j).and_then(|x| x.mul(g)).map(|x| x == j).unwrap_or(false)
}

/// `xᵗ J + J x = 0`.
pub fn is_symplectic_algebra<R: Ring>(x: &IndexedMatrix<R>) -> bool {
    let j = symplectic_form::<R>(x.n());
    let lhs = x.transpose().mul(&j).and_then(|a| a.add(&j.mul(x)?));
    lhs.map(|m| m.is_zero()).unwrap_or(false)
}

/// Entrywise constant terms; fails on the first entry with a negative power.
pub fn laurent_limit_at_zero(a: &IndexedMatrix<Laurent>) -> Result<IndexedMatrix<Rational>> {
    let n = a.n();
    let m = a.as_matrix().try_map(|p, q, x| {
        x.limit_at_zero().map_err(|exponent| Error::NegativeExponent {
            row: index_at(n, p),
            col: index_at(n, q),
            exponent,
        })
    })?;
    IndexedMatrix::from_matrix(n, m)
}

impl<R: Ring> fmt::Display for IndexedMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_string_rows();
        let width = cells.iter().flatten().map(String::len).chain([3]).max().unwrap_or(3);
        write!(f, "{:>4} ", "")?;
        for i in display_indices(self.n) {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        for (p, row) in cells.iter().enumerate() {
            write!(f, "{:>4} ", index_at(self.n, p))?;
            for c in row {
                write!(f, " {:>width$}", c)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<R: Ring> Serialize for IndexedMatrix<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.to_string_rows();
        let mut seq = serializer.serialize_seq(Some(rows.len()))?;
        for row in &rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn index_bijection() {
        for n in 1..=6 {
            for p in 0..2 * n {
                assert_eq!(position_of(n, index_at(n, p)), p);
            }
        }
        assert_eq!(display_indices(2).collect::<Vec<_>>(), vec![1, 2, -2, -1]);
    }

    #[test]
    fn rank_basics() {
        assert_eq!(IndexedMatrix::<Rational>::zero(3).rank(), 0);
        assert_eq!(IndexedMatrix::<Rational>::identity(3).rank(), 6);
        let m = Matrix::from_rows(vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn lower_projection_of_diagonal_vanishes() {
        let d = IndexedMatrix::<Rational>::identity(2).scale(&int(5));
        assert!(d.lower_projection().is_zero());
    }

    #[test]
    fn form_is_symplectic() {
        let j = symplectic_form::<Rational>(3);
        assert!(is_symplectic_group(&j));
        assert!(is_symplectic_group(&IndexedMatrix::<Rational>::identity(3)));
        assert!(is_symplectic_algebra(&IndexedMatrix::<Rational>::zero(3)));
        assert!(!is_symplectic_algebra(&IndexedMatrix::<Rational>::unit(2, 1, 2)));
        assert_eq!(*j.at(1, -1), int(1));
        assert_eq!(*j.at(-1, 1), int(-1));
    }

    #[test]
    fn limit_at_zero_reports_divergence() {
        let mut a = IndexedMatrix::<Laurent>::zero(2);
        a.set_at(-2, 1, -Laurent::var());
        let lim = laurent_limit_at_zero(&a).unwrap();
        assert!(lim.is_zero());
        a.set_at(2, -2, Laurent::term(1, -1));
        assert_eq!(
            laurent_limit_at_zero(&a).unwrap_err(),
            Error::NegativeExponent { row: 2, col: -2, exponent: -1 }
        );
        let c = IndexedMatrix::<Rational>::identity(2);
        assert_eq!(laurent_limit_at_zero(&c.to_laurent()).unwrap(), c);
    }

    #[test]
    fn json_rows() {
        let m = IndexedMatrix::<Laurent>::unit(1, -1, 1).scale(&Laurent::term(1, 2));
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["0","0"],["s^2","0"]]"#);
    }
}
