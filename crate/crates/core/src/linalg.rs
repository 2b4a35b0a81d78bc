//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here is division-free or uses exact integer division only, so
//! no value is ever rounded or truncated.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left}x{left} against {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("exterior power degree {k} out of range for dimension {dim}")]
    DegreeOutOfRange { k: usize, dim: usize },
    #[error("matrix must have at least one row")]
    Empty,
    #[error("row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
}

/// A square matrix of arbitrary-precision integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(LinalgError::NotSquare {
                    row: row + 1,
                    len: r.len(),
                    dim,
                });
            }
            entries.extend(r);
        }
        Ok(Self { dim, entries })
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics if `rows` is empty or not square.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("literal matrix must be square and nonempty")
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| BigInt::zero())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Exact matrix product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let n = self.dim;
        Ok(Self::from_fn(n, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..n {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, j);
                }
            }
            acc
        }))
    }

    /// `self^e` by repeated squaring; `pow(0)` is the identity.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        bareiss_det(self.to_rows())
    }

    /// The compound matrix of all `k`-th order minors.
    ///
    /// Rows and columns are indexed by the `k`-subsets of `0..dim` in
    /// lexicographic order.
    pub fn exterior_power(&self, k: usize) -> Result<Self, LinalgError> {
        if k > self.dim {
            return Err(LinalgError::DegreeOutOfRange { k, dim: self.dim });
        }
        if k == 0 {
            return Ok(Self::identity(1));
        }
        let subsets = k_subsets(self.dim, k);
        let n = subsets.len();
        let mut entries = Vec::with_capacity(n * n);
        for rows in &subsets {
            for cols in &subsets {
                let minor = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
                    .collect();
                entries.push(bareiss_det(minor));
            }
        }
        Ok(Self { dim: n, entries })
    }

    /// Smith normal form: returns `(u, d, v)` with `u * self * v = d`.
    ///
    /// `u` and `v` are unimodular, `d` is diagonal with non-negative entries
    /// forming a divisibility chain; zero entries trail.
    pub fn smith_normal_form(&self) -> (Self, Self, Self) {
        let n = self.dim;
        let mut a = self.to_rows();
        let mut u = Self::identity(n).to_rows();
        let mut v = Self::identity(n).to_rows();

        'outer: for t in 0..n {
            loop {
                let Some((pi, pj)) = min_abs_entry(&a, t) else {
                    break 'outer;
                };
                if pi != t {
                    a.swap(pi, t);
                    u.swap(pi, t);
                }
                if pj != t {
                    swap_cols(&mut a, pj, t);
                    swap_cols(&mut v, pj, t);
                }

                let mut dirty = false;
                for i in t + 1..n {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&a[t][t]);
                    add_row_multiple(&mut a, i, t, &-&q);
                    add_row_multiple(&mut u, i, t, &-&q);
                    dirty |= !a[i][t].is_zero();
                }
                for j in t + 1..n {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&a[t][t]);
                    add_col_multiple(&mut a, j, t, &-&q);
                    add_col_multiple(&mut v, j, t, &-&q);
                    dirty |= !a[t][j].is_zero();
                }
                if dirty {
                    continue;
                }

                // Pivot must divide the whole trailing block.
                let offender =
                    (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match offender {
                    Some(i) => {
                        add_row_multiple(&mut a, t, i, &BigInt::one());
                        add_row_multiple(&mut u, t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                    *x = -&*x;
                }
            }
        }

        let rebuild = |rows: Vec<Vec<BigInt>>| Self {
            dim: n,
            entries: rows.into_iter().flatten().collect(),
        };
        (rebuild(u), rebuild(a), rebuild(v))
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// All `k`-subsets of `0..n`, each sorted, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

// row[target] += c * row[source]
fn add_row_multiple(a: &mut [Vec<BigInt>], target: usize, source: usize, c: &BigInt) {
    let src = a[source].clone();
    for (x, s) in a[target].iter_mut().zip(src) {
        *x += c * s;
    }
}

// col[target] += c * col[source]
fn add_col_multiple(a: &mut [Vec<BigInt>], target: usize, source: usize, c: &BigInt) {
    for row in a.iter_mut() {
        let s = c * &row[source];
        row[target] += s;
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on dimension mismatch; use [`IntMatrix::checked_mul`] otherwise.
    fn mul(self, rhs: Self) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: Self) -> IntMatrix {
        self.checked_add(rhs).expect("matrix dimensions must agree")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: Self) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix dimensions must agree")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

/// Bracket form `[[a,b],[c,d]]`, the same syntax the parser accepts.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
