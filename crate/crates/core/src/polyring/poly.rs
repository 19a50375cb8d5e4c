use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Integer, Rational};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignVerdict {
    ZeroPolynomial,
    AllPositive,
    AllNegative,
    MixedSigns,
}

impl SignVerdict {
    pub fn is_definite(self) -> bool {
        matches!(self, SignVerdict::AllPositive | SignVerdict::AllNegative)
    }
}

/// Multivariate polynomial with exact rational coefficients over named variables.
///
/// Binary operators panic when the variable lists differ; the `checked_*`
/// methods return [`Error::VariableMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    variables: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePolynomial {
    pub fn zero(variables: &[String]) -> Self {
        Self {
            variables: variables.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: &[String], c: Rational) -> Self {
        let mut p = Self::zero(variables);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(variables.len()), c);
        }
        p
    }

    pub fn one(variables: &[String]) -> Self {
        Self::constant(variables, Rational::one())
    }

    /// The polynomial consisting of the variable at `index`.
    pub fn var(variables: &[String], index: usize) -> Self {
        let mut e = vec![0; variables.len()];
        e[index] = 1;
        Self::monomial(variables, Rational::one(), e)
    }

    /// The polynomial consisting of the named variable.
    pub fn variable(variables: &[String], name: &str) -> Result<Self> {
        let index = variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::VariableMismatch(format!("unknown variable {name}")))?;
        Ok(Self::var(variables, index))
    }

    pub fn monomial(variables: &[String], c: Rational, exponents: Vec<u32>) -> Self {
        assert_eq!(exponents.len(), variables.len(), "exponent length");
        let mut p = Self::zero(variables);
        if !c.is_zero() {
            p.terms.insert(Monomial(exponents), c);
        }
        p
    }

    pub fn from_terms(variables: &[String], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(variables);
        for (e, c) in terms {
            assert_eq!(e.len(), variables.len(), "exponent length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Variable names `prefix1, ..., prefixN`.
    pub fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in one variable.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[index]).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.variables != other.variables {
            return Err(Error::VariableMismatch(format!(
                "{:?} vs {:?}",
                self.variables, other.variables
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.variables);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.variables);
        }
        Self {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.variables);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replaces the variable at `index` by `value`, which must use the same variables.
    pub fn substitute(&self, index: usize, value: &Self) -> Result<Self> {
        self.check_vars(value)?;
        let max = self.degree_in(index).unwrap_or(0) as usize;
        let mut powers = vec![Self::one(&self.variables)];
        for k in 1..=max {
            powers.push(&powers[k - 1] * value);
        }
        let mut out = Self::zero(&self.variables);
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let k = rest[index] as usize;
            rest[index] = 0;
            let term = Self::monomial(&self.variables, c.clone(), rest);
            out = &out + &(&term * &powers[k]);
        }
        Ok(out)
    }

    /// Substitutes constants for some variables; `None` keeps the variable.
    pub fn substitute_values(&self, values: &[Option<Rational>]) -> Self {
        assert_eq!(values.len(), self.nvars());
        let mut out = Self::zero(&self.variables);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = m.0.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    coeff *= num::pow(v.clone(), e[i] as usize);
                    e[i] = 0;
                }
            }
            out.add_term(Monomial(e), coeff);
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "point dimension");
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            let v = m
                .0
                .iter()
                .zip(point)
                .fold(c.clone(), |t, (&e, x)| t * num::pow(x.clone(), e as usize));
            acc + v
        })
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = rational_to_f64(c);
                m.0.iter().zip(point).fold(c, |t, (&e, x)| t * x.powi(e as i32))
            })
            .sum()
    }

    /// Partial derivative with respect to the variable at `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.variables);
        for (m, c) in &self.terms {
            let k = m.0[index];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[index] -= 1;
            out.add_term(Monomial(e), c * Rational::from_integer(Integer::from(k)));
        }
        out
    }

    /// Same polynomial over a new variable list containing all current variables.
    pub fn embed(&self, variables: &[String]) -> Result<Self> {
        let map: Vec<usize> = self
            .variables
            .iter()
            .map(|v| {
                variables
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::VariableMismatch(format!("{v} missing from target")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(variables);
        for (m, c) in &self.terms {
            let mut e = vec![0; variables.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] = k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Divides out the largest monomial dividing every term.
    pub fn clear_monomial_content(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g: Vec<u32> = self.terms.keys().next().expect("nonzero").0.clone();
        for m in self.terms.keys() {
            for (gi, &e) in g.iter_mut().zip(&m.0) {
                *gi = (*gi).min(e);
            }
        }
        Self {
            variables: self.variables.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().zip(&g).map(|(a, b)| a - b).collect()), c.clone()))
                .collect(),
        }
    }

    /// Indices of variables that occur with positive exponent.
    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// Dense coefficients (lowest degree first) if at most one variable occurs.
    pub fn to_univariate(&self) -> Option<Vec<Rational>> {
        let used = self.used_variables();
        if used.len() > 1 {
            return None;
        }
        let index = used.first().copied();
        let deg = index.map_or(0, |i| self.degree_in(i).unwrap_or(0)) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = index.map_or(0, |i| m.0[i]) as usize;
            coeffs[k] = c.clone();
        }
        Some(coeffs)
    }

    pub fn sign_classify(&self) -> SignVerdict {
        let pos = self.terms.values().any(Signed::is_positive);
        let neg = self.terms.values().any(Signed::is_negative);
        match (pos, neg) {
            (false, false) => SignVerdict::ZeroPolynomial,
            (true, false) => SignVerdict::AllPositive,
            (false, true) => SignVerdict::AllNegative,
            (true, true) => SignVerdict::MixedSigns,
        }
    }

    /// Multiplies by the least common multiple of the denominators, making
    /// every coefficient an integer with gcd 1.
    pub fn primitive(&self) -> Self {
        let mut l = Integer::one();
        let mut g = Integer::zero();
        for c in self.terms.values() {
            l = num::integer::lcm(l, c.denom().clone());
        }
        for c in self.terms.values() {
            g = num::integer::gcd(g, (c * Rational::from_integer(l.clone())).to_integer());
        }
        if g.is_zero() {
            return self.clone();
        }
        self.scale(&Rational::new(l, g))
    }
}

pub fn sign_classify(p: &SparsePolynomial) -> SignVerdict {
    p.sign_classify()
}

pub fn rational_to_f64(c: &Rational) -> f64 {
    use num::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: Self) -> SparsePolynomial {
        self.checked_add(rhs).expect("polynomial variables must match")
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: Self) -> SparsePolynomial {
        self.checked_sub(rhs).expect("polynomial variables must match")
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: Self) -> SparsePolynomial {
        self.checked_mul(rhs).expect("polynomial variables must match")
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

/// Canonical rendering: descending graded-lex order, explicit `*` and `^`,
/// rational coefficients as `p/q`, e.g. `-2*x1^6 + 3/2*x1*x2 + x2^4 - 5`.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let a = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(&self.variables)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    fn xs(n: usize) -> Vec<String> {
        SparsePolynomial::names("x", n)
    }

    #[test]
    fn difference_of_squares() {
        let v = xs(1);
        let x = SparsePolynomial::var(&v, 0);
        let one = SparsePolynomial::one(&v);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "x1^2 - 1");
        assert!((&p + &-&p).is_zero());
    }

    #[test]
    fn rendering() {
        let v = xs(2);
        let p = SparsePolynomial::from_terms(
            &v,
            [(vec![6, 0], rat(-2)), (vec![0, 4], rat(1)), (vec![1, 1], ratio(3, 2)), (vec![0, 0], rat(-5))],
        );
        assert_eq!(p.to_string(), "-2*x1^6 + x2^4 + 3/2*x1*x2 - 5");
        assert_eq!(SparsePolynomial::zero(&v).to_string(), "0");
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = SparsePolynomial::var(&xs(1), 0);
        let b = SparsePolynomial::var(&xs(2), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn substitution_and_evaluation() {
        let v = xs(2);
        let x1 = SparsePolynomial::var(&v, 0);
        let x2 = SparsePolynomial::var(&v, 1);
        let p = &(&x1 * &x2) + &x2.pow(2);
        let q = p.substitute(1, &(&x1 + &SparsePolynomial::one(&v))).unwrap();
        assert_eq!(q.to_string(), "2*x1^2 + 3*x1 + 1");
        assert_eq!(q.evaluate(&[rat(2), rat(0)]), rat(15));
    }

    #[test]
    fn signs() {
        let v = xs(2);
        let x1 = SparsePolynomial::var(&v, 0);
        let x2 = SparsePolynomial::var(&v, 1);
        assert_eq!((&(&x1 * &x2) - &x2.pow(2)).sign_classify(), SignVerdict::MixedSigns);
        assert_eq!(SparsePolynomial::zero(&v).sign_classify(), SignVerdict::ZeroPolynomial);
        assert_eq!((-&x1).sign_classify(), SignVerdict::AllNegative);
    }

    #[test]
    fn monomial_content_and_univariate() {
        let v = xs(2);
        let p = SparsePolynomial::from_terms(&v, [(vec![3, 1], rat(2)), (vec![1, 1], rat(-1))]);
        let q = p.clear_monomial_content();
        assert_eq!(q.to_string(), "2*x1^2 - 1");
        assert_eq!(q.to_univariate().unwrap(), vec![rat(-1), rat(0), rat(2)]);
        assert!(p.to_univariate().is_none());
    }
}
