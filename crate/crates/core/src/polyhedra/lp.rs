//! Exact rational simplex method with Bland's rule.

use num::{One, Signed, Zero};

use crate::exactalg::{kernel_matrix, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositiveKernel {
    Witness(Vec<Rational>),
    Empty,
}

impl PositiveKernel {
    pub fn is_witness(&self) -> bool {
        matches!(self, PositiveKernel::Witness(_))
    }
}

struct Tableau {
    /// Constraint rows; last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x = &*x - &f * p;
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · x` over the columns `0..active`; returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], active: usize) -> bool {
        let rhs = self.rows.first().map_or(0, |r| r.len() - 1);
        loop {
            // Reduced cost of column j: cost_j - cost_B · column_j.
            let entering = (0..active).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    rc -= &cost[self.basis[i]] * &row[j];
                }
                rc.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c · x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(a: &RationalMatrix, b: &[Rational], c: &[Rational]) -> LpOutcome {
    let (m, n) = a.shape();
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    // Columns: x (n), artificials (m), rhs.
    let mut rows = Vec::with_capacity(m);
    for (i, bi) in b.iter().enumerate() {
        let negate = bi.is_negative();
        let mut row = Vec::with_capacity(n + m + 1);
        for j in 0..n {
            let v = a.get(i, j).clone();
            row.push(if negate { -v } else { v });
        }
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if negate { -bi.clone() } else { bi.clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
    };
    let mut phase1 = vec![Rational::zero(); n + m];
    for x in phase1.iter_mut().skip(n) {
        *x = -Rational::one();
    }
    t.optimize(&phase1, n + m);
    let infeasibility: Rational = t
        .basis
        .iter()
        .zip(&t.rows)
        .filter(|(&bcol, _)| bcol >= n)
        .map(|(_, row)| row[n + m].clone())
        .sum();
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis or drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat_n(Rational::zero(), m));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bcol) in t.rows.iter().zip(&t.basis) {
        x[bcol] = row[n + m].clone();
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}

/// Some `x ≥ 0` with `a x = b`, if one exists.
pub fn feasible_point(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    match maximize(a, b, &vec![Rational::zero(); a.cols()]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// A vector `w` with `m w = 0` and every entry positive, or `Empty`.
///
/// Solves: maximize `t` subject to `m (u + t 1) = 0`, `t + s = 1`, `u, t, s ≥ 0`.
pub fn strictly_positive_kernel(m: &RationalMatrix) -> PositiveKernel {
    let (rows, n) = m.shape();
    if n == 0 {
        return PositiveKernel::Empty;
    }
    let a = RationalMatrix::from_fn(rows + 1, n + 2, |i, j| {
        if i < rows {
            if j < n {
                m.get(i, j).clone()
            } else if j == n {
                m.row(i).iter().sum()
            } else {
                Rational::zero()
            }
        } else if j >= n {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let mut b = vec![Rational::zero(); rows];
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); n + 2];
    c[n] = Rational::one();
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let t = &x[n];
            PositiveKernel::Witness(x[..n].iter().map(|u| u + t).collect())
        }
        _ => PositiveKernel::Empty,
    }
}

/// Whether the row space of `a` contains a strictly positive vector.
pub fn positive_row_space(a: &RationalMatrix) -> bool {
    let k = kernel_matrix(a);
    strictly_positive_kernel(&k.transpose()).is_witness()
}

/// A nonzero `v ≥ 0` in the row space of `a` with support inside `allowed`.
pub fn nonnegative_row_vector_in(a: &RationalMatrix, allowed: &[bool]) -> Option<Vec<Rational>> {
    let n = a.cols();
    assert_eq!(allowed.len(), n);
    let kt = kernel_matrix(a).transpose();
    let outside: Vec<usize> = (0..n).filter(|&i| !allowed[i]).collect();
    let rows = kt.rows() + outside.len() + 1;
    let cons = RationalMatrix::from_fn(rows, n, |i, j| {
        if i < kt.rows() {
            kt.get(i, j).clone()
        } else if i < kt.rows() + outside.len() {
            if outside[i - kt.rows()] == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        } else {
            Rational::one()
        }
    });
    let mut b = vec![Rational::zero(); rows];
    b[rows - 1] = Rational::one();
    feasible_point(&cons, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn small_lp() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
        let a = RationalMatrix::from_i64(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let out = maximize(&a, &[rat(4), rat(6)], &[rat(1), rat(1), rat(0), rat(0)]);
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Rational::new(14.into(), 5.into())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = RationalMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(maximize(&a, &[rat(-1)], &[rat(0), rat(0)]), LpOutcome::Infeasible);
        let a = RationalMatrix::from_i64(&[&[1, -1]]);
        assert_eq!(maximize(&a, &[rat(0)], &[rat(1), rat(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn positive_kernels() {
        match strictly_positive_kernel(&RationalMatrix::from_i64(&[&[1, -1]])) {
            PositiveKernel::Witness(w) => assert!(w[0] > rat(0) && w[0] == w[1]),
            PositiveKernel::Empty => panic!("expected a witness"),
        }
        assert_eq!(strictly_positive_kernel(&RationalMatrix::from_i64(&[&[1, 1]])), PositiveKernel::Empty);
    }

    #[test]
    fn row_spaces() {
        assert!(positive_row_space(&RationalMatrix::from_i64(&[&[2, 3]])));
        assert!(!positive_row_space(&RationalMatrix::from_i64(&[&[1, -1]])));
        assert!(!positive_row_space(&RationalMatrix::zeros(0, 2)));
    }

    #[test]
    fn supported_row_vectors() {
        let a = RationalMatrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        assert!(nonnegative_row_vector_in(&a, &[true, true, false]).is_some());
        assert!(nonnegative_row_vector_in(&a, &[true, false, false]).is_none());
    }
}
