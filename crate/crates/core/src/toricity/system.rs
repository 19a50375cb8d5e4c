use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rank, row_basis, rref, Integer, IntegerMatrix, Rational, RationalMatrix};
use crate::polyhedra::SupportSet;
use crate::polyring::SparsePolynomial;

/// The system `F = C (κ ∘ x^M)` with `C` of full row rank `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalSystem {
    c: RationalMatrix,
    m: IntegerMatrix,
    variables: Vec<String>,
    parameters: Vec<String>,
}

impl VerticalSystem {
    /// A rank-deficient `c` is replaced by a basis of its row space.
    pub fn new(c: RationalMatrix, m: IntegerMatrix) -> Result<Self> {
        if c.cols() != m.cols() {
            return Err(Error::DimensionMismatch(format!(
                "C has {} columns but M has {}",
                c.cols(),
                m.cols()
            )));
        }
        let c = if rank(&c) < c.rows() { row_basis(&c) } else { c };
        let variables = SparsePolynomial::names("x", m.rows());
        let parameters = SparsePolynomial::names("k", m.cols());
        Ok(Self {
            c,
            m,
            variables,
            parameters,
        })
    }

    pub fn with_variable_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} variable names for {} variables",
                names.len(),
                self.n()
            )));
        }
        self.variables = names;
        Ok(self)
    }

    pub fn c(&self) -> &RationalMatrix {
        &self.c
    }

    /// The exponent matrix `M`.
    pub fn exponents(&self) -> &IntegerMatrix {
        &self.m
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn s(&self) -> usize {
        self.c.rows()
    }

    pub fn m(&self) -> usize {
        self.c.cols()
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn exponent_column(&self, j: usize) -> Vec<i64> {
        self.m.column(j).iter().map(|x| i64::try_from(x).expect("exponent fits in i64")).collect()
    }

    /// `C diag(w) M^T`, an `s x n` matrix.
    pub fn c_diag_w_mt(&self, w: &[Rational]) -> RationalMatrix {
        let mt = self.m.to_rational().transpose();
        self.c.scale_columns(w).mul(&mt).expect("shape")
    }

    /// The polynomials of `F` at the given parameter values, each multiplied by
    /// a monomial so that all exponents are nonnegative and minimal.
    pub fn polynomials(&self, kappa: &[Rational]) -> Result<Vec<SparsePolynomial>> {
        if kappa.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} parameter values for {} parameters",
                kappa.len(),
                self.m()
            )));
        }
        let mut out = Vec::with_capacity(self.s());
        for i in 0..self.s() {
            let cols: Vec<usize> = (0..self.m()).filter(|&j| !self.c.get(i, j).is_zero()).collect();
            let shift: Vec<i64> = (0..self.n())
                .map(|k| cols.iter().map(|&j| self.exponent_column(j)[k]).min().unwrap_or(0))
                .collect();
            let terms = cols.iter().map(|&j| {
                let e = self.exponent_column(j);
                let exps = e.iter().zip(&shift).map(|(a, b)| (a - b) as u32).collect();
                (exps, self.c.get(i, j) * &kappa[j])
            });
            out.push(SparsePolynomial::from_terms(&self.variables, terms));
        }
        Ok(out)
    }

    /// Newton polytope generators of each polynomial for generic parameters.
    pub fn supports(&self) -> Vec<SupportSet> {
        (0..self.s())
            .map(|i| {
                let pts = (0..self.m())
                    .filter(|&j| !self.c.get(i, j).is_zero())
                    .map(|j| self.exponent_column(j))
                    .collect();
                SupportSet::new(self.n(), pts).expect("dimension")
            })
            .collect()
    }
}

/// Coefficient of one monomial in a freely parametrized system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    /// A parameter of either sign, realized by two columns `+1` and `-1`.
    Free,
    Fixed(Rational),
}

/// Block-diagonal vertical system from per-polynomial lists of monomials.
/// Each entry contributes one column of `M` (two for [`Coefficient::Free`]).
pub fn build_free_system(n: usize, blocks: &[Vec<(Vec<i64>, Coefficient)>]) -> Result<VerticalSystem> {
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut entries: Vec<(usize, Rational)> = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        for (point, coeff) in block {
            if point.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "monomial of length {} in {n} variables",
                    point.len()
                )));
            }
            let values = match coeff {
                Coefficient::Free => vec![Rational::from_integer(1.into()), Rational::from_integer((-1).into())],
                Coefficient::Fixed(v) => vec![v.clone()],
            };
            for v in values {
                cols.push(point.clone());
                entries.push((i, v));
            }
        }
    }
    let m = cols.len();
    let c = RationalMatrix::from_fn(blocks.len(), m, |i, j| {
        if entries[j].0 == i {
            entries[j].1.clone()
        } else {
            Rational::zero()
        }
    });
    let mm = IntegerMatrix::from_fn(n, m, |k, j| Integer::from(cols[j][k]));
    VerticalSystem::new(c, mm)
}

/// Freely parametrized system with one `+1` coefficient per support point.
pub fn build_free_system_from_supports(supports: &[SupportSet]) -> Result<VerticalSystem> {
    let n = supports.first().map_or(0, SupportSet::dim);
    let blocks: Vec<Vec<(Vec<i64>, Coefficient)>> = supports
        .iter()
        .map(|s| {
            s.points()
                .iter()
                .map(|p| (p.clone(), Coefficient::Fixed(Rational::from_integer(1.into()))))
                .collect()
        })
        .collect();
    build_free_system(n, &blocks)
}

/// Whether every row of `rref(C)` has exactly two nonzero entries of opposite
/// sign, in which case the positive zero set is a single coset for every κ.
pub fn binomial_quickcheck(sys: &VerticalSystem) -> bool {
    let (r, pivots) = rref(sys.c());
    if pivots.is_empty() {
        return false;
    }
    (0..pivots.len()).all(|i| {
        let nz: Vec<&Rational> = r.row(i).iter().filter(|x| !x.is_zero()).collect();
        nz.len() == 2 && nz[0].is_positive() != nz[1].is_positive()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn triangle_from_free_construction() {
        let sys = build_free_system(
            2,
            &[vec![
                (vec![3, 2], Coefficient::Free),
                (vec![0, 4], Coefficient::Fixed(rat(1))),
                (vec![6, 0], Coefficient::Fixed(rat(-2))),
            ]],
        )
        .unwrap();
        assert_eq!(sys.c(), &RationalMatrix::from_i64(&[&[1, -1, 1, -2]]));
        assert_eq!(sys.exponents(), &IntegerMatrix::from_i64(&[&[3, 3, 0, 6], &[2, 2, 4, 0]]));
    }

    #[test]
    fn single_point_and_two_blocks() {
        let s = SupportSet::new(1, vec![vec![2]]).unwrap();
        let sys = build_free_system_from_supports(&[s]).unwrap();
        assert_eq!(sys.c(), &RationalMatrix::from_i64(&[&[1]]));
        let a = SupportSet::new(2, vec![vec![1, 0], vec![0, 0]]).unwrap();
        let b = SupportSet::new(2, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let sys = build_free_system_from_supports(&[a, b]).unwrap();
        assert_eq!(sys.c(), &RationalMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    }

    #[test]
    fn rank_deficient_rows_are_replaced() {
        let c = RationalMatrix::from_i64(&[&[1, -1], &[2, -2]]);
        let sys = VerticalSystem::new(c, IntegerMatrix::from_i64(&[&[1, 0]])).unwrap();
        assert_eq!(sys.s(), 1);
    }

    #[test]
    fn binomial_rows() {
        let binomial = VerticalSystem::new(
            RationalMatrix::from_i64(&[&[1, -1, 0], &[0, 1, -1]]),
            IntegerMatrix::from_i64(&[&[1, 0, 2]]),
        )
        .unwrap();
        assert!(binomial_quickcheck(&binomial));
        let fig = VerticalSystem::new(
            RationalMatrix::from_i64(&[&[-3, 3, 3, -1, 1], &[1, -1, -1, 1, -1]]),
            IntegerMatrix::from_i64(&[&[6, 3, 0, 1, 0], &[0, 2, 4, 0, 0], &[0, 0, 0, 0, 5]]),
        )
        .unwrap();
        assert!(!binomial_quickcheck(&fig));
    }

    #[test]
    fn laurent_rows_are_shifted() {
        let sys = VerticalSystem::new(
            RationalMatrix::from_i64(&[&[1, -1]]),
            IntegerMatrix::from_i64(&[&[-1, 2]]),
        )
        .unwrap();
        let f = sys.polynomials(&[rat(1), rat(1)]).unwrap();
        assert_eq!(f[0].to_string(), "-x1^3 + 1");
    }
}
