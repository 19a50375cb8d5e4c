//! Integer lattices: Hermite and Smith normal forms, saturation, kernel lattices.

use num::integer::Integer as _;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{Integer, IntegerMatrix, Rational, RationalMatrix};
use super::rref::left_kernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeMode {
    /// Rational kernel, cleared to primitive integer rows, then saturated.
    RationalSaturated,
    /// Z-basis of the integer kernel lattice by unimodular row reduction.
    IntegerLattice,
}

fn row_sub(rows: &mut [Vec<Integer>], target: usize, source: usize, q: &Integer) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (x, s) in rows[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// Row echelon form by unimodular integer row operations, applied to `rows`
/// and mirrored on `track` (same number of rows). Returns pivot columns.
fn integer_echelon(rows: &mut [Vec<Integer>], track: &mut [Vec<Integer>], cols: usize) -> Vec<usize> {
    let k = rows.len();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for j in 0..cols {
        if lead == k {
            break;
        }
        loop {
            let best = (lead..k)
                .filter(|&i| !rows[i][j].is_zero())
                .min_by(|&a, &b| rows[a][j].abs().cmp(&rows[b][j].abs()));
            let Some(p) = best else { break };
            rows.swap(lead, p);
            track.swap(lead, p);
            let mut done = true;
            for i in lead + 1..k {
                if rows[i][j].is_zero() {
                    continue;
                }
                let q = rows[i][j].div_floor(&rows[lead][j]);
                row_sub(rows, i, lead, &q);
                row_sub(track, i, lead, &q);
                if !rows[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (lead..k).any(|i| !rows[i][j].is_zero()) {
            pivots.push(j);
            lead += 1;
        }
    }
    pivots
}

/// Hermite normal form (row style): nonzero rows only, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    let cols = m.cols();
    let mut rows = m.row_vecs();
    let mut track: Vec<Vec<Integer>> = vec![Vec::new(); rows.len()];
    let pivots = integer_echelon(&mut rows, &mut track, cols);
    rows.truncate(pivots.len());
    for (i, &j) in pivots.iter().enumerate() {
        if rows[i][j].is_negative() {
            for x in rows[i].iter_mut() {
                *x = -x.clone();
            }
        }
        for r in 0..i {
            let q = rows[r][j].div_floor(&rows[i][j]);
            row_sub(&mut rows, r, i, &q);
        }
    }
    IntegerMatrix::from_rows(cols, rows).expect("shape preserved")
}

/// Smith normal form: the diagonal entries `d1 | d2 | ...` (nonzero ones only)
/// and the inverse of the right transform. With `U m V = D`, the first
/// `rank` rows of `V^{-1}` span the saturation of the row lattice of `m`.
pub fn smith_normal_form(m: &IntegerMatrix) -> (Vec<Integer>, IntegerMatrix) {
    let (rows, cols) = m.shape();
    let mut a = m.row_vecs();
    let mut vinv = IntegerMatrix::identity(cols).row_vecs();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (diag, IntegerMatrix::from_rows(cols, vinv).expect("square"));
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_sub(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                // column j -= q column t, so V^{-1} gets row t += q row j.
                let src = vinv[j].clone();
                for (x, s) in vinv[t].iter_mut().zip(&src) {
                    *x += &q * s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(&src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag.push(a[t][t].clone());
    }
    (diag, IntegerMatrix::from_rows(cols, vinv).expect("square"))
}

/// Basis of the saturated lattice `row_Q(m) ∩ Z^n`.
pub fn saturate(m: &IntegerMatrix) -> IntegerMatrix {
    let (diag, vinv) = smith_normal_form(m);
    vinv.select_rows(&(0..diag.len()).collect::<Vec<_>>())
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Integer> {
    let l = v.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Integer> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Rows form a basis of `{y : y m = 0}`, i.e. of `ker(m^T)`.
pub fn integer_kernel_basis(m: &IntegerMatrix, mode: LatticeMode) -> IntegerMatrix {
    let k = m.rows();
    match mode {
        LatticeMode::RationalSaturated => {
            let kern = left_kernel(&m.to_rational());
            if kern.rows() == 0 {
                return IntegerMatrix::zeros(0, k);
            }
            let rows: Vec<Vec<Integer>> = kern.row_vecs().iter().map(|r| primitive_integer_vector(r)).collect();
            saturate(&IntegerMatrix::from_rows(k, rows).expect("shape"))
        }
        LatticeMode::IntegerLattice => {
            let mut rows = m.row_vecs();
            let mut track = IntegerMatrix::identity(k).row_vecs();
            let pivots = integer_echelon(&mut rows, &mut track, m.cols());
            let kernel: Vec<Vec<Integer>> = track.split_off(pivots.len());
            IntegerMatrix::from_rows(k, kernel).expect("shape")
        }
    }
}

/// Whether two integer matrices have the same row lattice.
pub fn same_row_lattice(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    a.cols() == b.cols() && hermite_normal_form(a) == hermite_normal_form(b)
}

/// Whether `v` lies in the row lattice of `a`.
pub fn lattice_contains(a: &IntegerMatrix, v: &[Integer]) -> bool {
    let row = IntegerMatrix::from_rows(a.cols(), vec![v.to_vec()]).expect("length");
    same_row_lattice(a, &a.vstack(&row).expect("width"))
}

/// Whether the row lattice of `sub` is contained in that of `sup`.
pub fn lattice_contained(sub: &IntegerMatrix, sup: &IntegerMatrix) -> bool {
    (0..sub.rows()).all(|i| lattice_contains(sup, sub.row(i)))
}

pub fn rational_to_integer_rows(m: &RationalMatrix) -> IntegerMatrix {
    let rows = m.row_vecs().iter().map(|r| primitive_integer_vector(r)).collect();
    IntegerMatrix::from_rows(m.cols(), rows).expect("shape")
}
