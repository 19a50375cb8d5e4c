use std::collections::HashMap;

use super::poly::SparsePolynomial;
use crate::error::{Error, Result};
use crate::exactalg::Matrix;

/// Largest matrix accepted by [`det_symbolic`].
pub const DET_SIZE_LIMIT: usize = 12;

pub type PolyMatrix = Matrix<SparsePolynomial>;

/// Exact determinant by cofactor expansion along the sparsest remaining row or
/// column, with minors memoized by their row and column sets.
///
/// All entries must share one variable list; `variables` is used for the
/// empty matrix and the zero result.
pub fn det_symbolic(m: &PolyMatrix, variables: &[String]) -> Result<SparsePolynomial> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            n,
            m.cols()
        )));
    }
    if n > DET_SIZE_LIMIT {
        return Err(Error::SizeGuard {
            size: n,
            limit: DET_SIZE_LIMIT,
        });
    }
    for p in m.entries() {
        if p.variables() != variables {
            return Err(Error::VariableMismatch(format!(
                "entry over {:?}, expected {:?}",
                p.variables(),
                variables
            )));
        }
    }
    let full = (1u32 << n) - 1;
    let mut memo = HashMap::new();
    Ok(expand(m, variables, full, full, &mut memo))
}

fn expand(
    m: &PolyMatrix,
    variables: &[String],
    rows: u32,
    cols: u32,
    memo: &mut HashMap<(u32, u32), SparsePolynomial>,
) -> SparsePolynomial {
    if rows == 0 {
        return SparsePolynomial::one(variables);
    }
    if let Some(p) = memo.get(&(rows, cols)) {
        return p.clone();
    }
    let row_idx: Vec<usize> = bits(rows);
    let col_idx: Vec<usize> = bits(cols);
    if row_idx.len() == 1 {
        let p = m.get(row_idx[0], col_idx[0]).clone();
        memo.insert((rows, cols), p.clone());
        return p;
    }
    let nonzeros_in_row = |i: usize| col_idx.iter().filter(|&&j| !m.get(i, j).is_zero()).count();
    let nonzeros_in_col = |j: usize| row_idx.iter().filter(|&&i| !m.get(i, j).is_zero()).count();
    let (best_row, row_count) = row_idx
        .iter()
        .enumerate()
        .map(|(k, &i)| (k, nonzeros_in_row(i)))
        .min_by_key(|&(_, c)| c)
        .expect("nonempty");
    let (best_col, col_count) = col_idx
        .iter()
        .enumerate()
        .map(|(k, &j)| (k, nonzeros_in_col(j)))
        .min_by_key(|&(_, c)| c)
        .expect("nonempty");

    let mut total = SparsePolynomial::zero(variables);
    if row_count <= col_count {
        let i = row_idx[best_row];
        for (k, &j) in col_idx.iter().enumerate() {
            let entry = m.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let minor = expand(m, variables, rows & !(1 << i), cols & !(1 << j), memo);
            let term = entry * &minor;
            total = if (best_row + k) % 2 == 0 { &total + &term } else { &total - &term };
        }
    } else {
        let j = col_idx[best_col];
        for (k, &i) in row_idx.iter().enumerate() {
            let entry = m.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let minor = expand(m, variables, rows & !(1 << i), cols & !(1 << j), memo);
            let term = entry * &minor;
            total = if (best_col + k) % 2 == 0 { &total + &term } else { &total - &term };
        }
    }
    memo.insert((rows, cols), total.clone());
    total
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn diagonal() {
        let v = SparsePolynomial::names("alpha", 4);
        let m = PolyMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                SparsePolynomial::var(&v, i)
            } else {
                SparsePolynomial::zero(&v)
            }
        });
        let d = det_symbolic(&m, &v).unwrap();
        assert_eq!(d.to_string(), "alpha1*alpha2*alpha3*alpha4");
    }

    #[test]
    fn two_by_two() {
        let v = SparsePolynomial::names("x", 2);
        let x = |i| SparsePolynomial::var(&v, i);
        let c = |k| SparsePolynomial::constant(&v, rat(k));
        let m = PolyMatrix::new(2, 2, vec![x(0), c(2), c(3), x(1)]).unwrap();
        assert_eq!(det_symbolic(&m, &v).unwrap().to_string(), "x1*x2 - 6");
    }

    #[test]
    fn size_guard() {
        let v: Vec<String> = Vec::new();
        let m = PolyMatrix::from_fn(13, 13, |_, _| SparsePolynomial::one(&v));
        assert!(matches!(det_symbolic(&m, &v), Err(Error::SizeGuard { size: 13, .. })));
    }
}
