use num::{One, Zero};

use super::matrix::{support, Rational, RationalMatrix};

/// Kernel basis made of fundamental circuits: one vector per non-pivot column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitBasis {
    pub vectors: Vec<Vec<Rational>>,
    pub supports: Vec<Vec<usize>>,
}

impl CircuitBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Basis vectors as the columns of a matrix with `dim` rows.
    pub fn as_columns(&self, dim: usize) -> RationalMatrix {
        RationalMatrix::from_fn(dim, self.vectors.len(), |i, j| self.vectors[j][i].clone())
    }
}

/// Reduced row echelon form and pivot columns. Pivots are chosen at the first
/// nonzero entry from the top, so ties go to the lowest column index.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut r = m.clone();
    let (rows, cols) = r.shape();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for j in 0..cols {
        if lead == rows {
            break;
        }
        let Some(p) = (lead..rows).find(|&i| !r.get(i, j).is_zero()) else {
            continue;
        };
        r.swap_rows(lead, p);
        let inv = Rational::one() / r.get(lead, j);
        for x in r.row_mut(lead) {
            *x = &*x * &inv;
        }
        let pivot_row = r.row(lead).to_vec();
        for i in 0..rows {
            if i == lead {
                continue;
            }
            let f = r.get(i, j).clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in r.row_mut(i).iter_mut().zip(&pivot_row).skip(j) {
                *x = &*x - &f * p;
            }
        }
        pivots.push(j);
        lead += 1;
    }
    (r, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}

/// The nonzero rows of the RREF: a canonical basis of the row space.
pub fn row_basis(m: &RationalMatrix) -> RationalMatrix {
    let (r, pivots) = rref(m);
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

pub fn kernel_circuit_basis(m: &RationalMatrix) -> CircuitBasis {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut vectors = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for j in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Rational::zero(); cols];
        v[j] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, j).clone();
        }
        vectors.push(v);
    }
    let supports = vectors.iter().map(|v| support(v)).collect();
    CircuitBasis { vectors, supports }
}

/// Kernel basis as the columns of an `cols x k` matrix.
pub fn kernel_matrix(m: &RationalMatrix) -> RationalMatrix {
    kernel_circuit_basis(m).as_columns(m.cols())
}

/// Basis of the left kernel `{y : y m = 0}` in reduced row echelon form.
pub fn left_kernel(m: &RationalMatrix) -> RationalMatrix {
    let k = kernel_matrix(&m.transpose()).transpose();
    row_basis(&k)
}

/// Solves `m x = b`, returning one solution if the system is consistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), b.len());
    let col = RationalMatrix::from_fn(b.len(), 1, |i, _| b[i].clone());
    let aug = m.hstack(&col).ok()?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, m.cols()).clone();
    }
    Some(x)
}

/// Exact determinant of a square rational matrix by elimination.
pub fn determinant(m: &RationalMatrix) -> Rational {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Rational::one();
    for j in 0..n {
        let Some(p) = (j..n).find(|&i| !a.get(i, j).is_zero()) else {
            return Rational::zero();
        };
        if p != j {
            a.swap_rows(p, j);
            det = -det;
        }
        let pivot = a.get(j, j).clone();
        det *= &pivot;
        for i in j + 1..n {
            let f = a.get(i, j) / &pivot;
            if f.is_zero() {
                continue;
            }
            for k in j..n {
                let v = a.get(i, k) - &f * a.get(j, k);
                a.set(i, k, v);
            }
        }
    }
    det
}
