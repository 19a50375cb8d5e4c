use std::fmt;
use std::ops::{Add, Mul};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Integer = BigInt;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Exact rational matrix. Entries are kept in lowest terms with a positive
/// denominator by `BigRational` itself.
pub type RationalMatrix = Matrix<Rational>;
pub type IntegerMatrix = Matrix<Integer>;

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows. `cols` is needed to give zero-row matrices a width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        support(self.row(i))
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
    T: Add<T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }
}

impl IntegerMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<Integer>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
            .collect();
        Self::from_rows(cols, data).expect("ragged rows")
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|x| Rational::from_integer(x.clone()))
    }

    /// Whether every entry is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }
}

impl RationalMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntegerMatrix::from_i64(rows).to_rational()
    }

    /// Returns the matrix as integers if every entry is integral.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    /// `self * diag(w)`.
    pub fn scale_columns(&self, w: &[Rational]) -> Self {
        assert_eq!(w.len(), self.cols);
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * &w[j])
    }
}

pub fn support<T: Zero>(v: &[T]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

/// Parses `p/q`, integers, and finite decimals such as `0.01` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: Integer = p.trim().parse().ok()?;
        let q: Integer = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return None;
        }
        let digits = format!("{whole_digits}{frac}");
        let numer: Integer = if digits.is_empty() {
            Integer::zero()
        } else {
            digits.parse().ok()?
        };
        let denom = num::pow(Integer::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Some(if negative { -value } else { value });
    }
    t.parse::<Integer>().ok().map(Rational::from_integer)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_is_checked() {
        assert!(RationalMatrix::new(2, 2, vec![rat(1); 3]).is_err());
        assert!(IntegerMatrix::from_rows(2, vec![vec![Integer::from(1)]]).is_err());
    }

    #[test]
    fn multiply_and_transpose() {
        let a = IntegerMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = a.transpose();
        assert_eq!(b, IntegerMatrix::from_i64(&[&[1, 3], &[2, 4]]));
        let p = a.mul(&b).unwrap();
        assert_eq!(p, IntegerMatrix::from_i64(&[&[5, 11], &[11, 25]]));
    }

    #[test]
    fn rationals_are_normalized() {
        let m = RationalMatrix::new(1, 1, vec![Rational::new(Integer::from(4), Integer::from(-6))])
            .unwrap();
        assert_eq!(m.get(0, 0), &ratio(-2, 3));
        assert_eq!(m.get(0, 0).denom(), &Integer::from(3));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("0.01"), Some(ratio(1, 100)));
        assert_eq!(parse_rational("-2.5"), Some(ratio(-5, 2)));
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
