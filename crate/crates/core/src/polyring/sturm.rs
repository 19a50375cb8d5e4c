//! Univariate real root counting with Sturm sequences.
//!
//! Polynomials are dense coefficient vectors, lowest degree first.

use num::{One, Signed, Zero};

use super::poly::SparsePolynomial;
use crate::error::{Error, Result};
use crate::exactalg::{Integer, Rational};

pub type Univariate = Vec<Rational>;

pub fn trim(mut p: Univariate) -> Univariate {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Rational]) -> Univariate {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(Integer::from(k)))
        .collect()
}

/// Remainder of `a` divided by `b` (`b` nonzero).
pub fn remainder(a: &[Rational], b: &[Rational]) -> Univariate {
    let db = degree(b).expect("division by zero polynomial");
    let lead = &b[db];
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / lead;
        let shift = dr - db;
        for (k, c) in b.iter().enumerate().take(db + 1) {
            r[k + shift] = &r[k + shift] - &q * c;
        }
        r = trim(r);
    }
    r
}

pub fn quotient(a: &[Rational], b: &[Rational]) -> Univariate {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else { return Vec::new() };
    if da < db {
        return Vec::new();
    }
    let mut q = vec![Rational::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &b[db];
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate().take(db + 1) {
            r[k + shift] = &r[k + shift] - &c * bc;
        }
        q[shift] = c;
        r = trim(r);
    }
    trim(q)
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> Univariate {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let r = remainder(&x, &y);
        x = y;
        y = r;
    }
    match degree(&x) {
        Some(d) => {
            let lead = x[d].clone();
            x.iter().map(|c| c / &lead).collect()
        }
        None => x,
    }
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
pub fn squarefree_part(p: &[Rational]) -> Univariate {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return trim(p.to_vec());
    }
    quotient(p, &g)
}

pub fn sturm_sequence(p: &[Rational]) -> Vec<Univariate> {
    let mut seq = vec![trim(p.to_vec())];
    let d = trim(derivative(p));
    if degree(&d).is_none() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = remainder(&seq[n - 2], &seq[n - 1]);
        if degree(&r).is_none() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(c: &Rational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Coefficients of `p(a + x)`.
pub fn taylor_shift(p: &[Rational], a: &Rational) -> Univariate {
    let mut c = p.to_vec();
    let n = c.len();
    for i in 0..n {
        for k in (i..n.saturating_sub(1)).rev() {
            let v = &c[k + 1] * a;
            c[k] += v;
        }
    }
    c
}

/// Sign of `p(a + ε)` for infinitesimal `ε > 0` (`right`) or `p(a − ε)`.
fn sign_near(p: &[Rational], a: &Rational, right: bool) -> i8 {
    let shifted = taylor_shift(p, a);
    match shifted.iter().position(|c| !c.is_zero()) {
        None => 0,
        Some(k) => {
            let s = sign(&shifted[k]);
            if right || k % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

fn sign_at_infinity(p: &[Rational], positive: bool) -> i8 {
    match degree(p) {
        None => 0,
        Some(d) => {
            let s = sign(&p[d]);
            if positive || d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

/// Number of distinct real roots in the open interval `(lo, hi)`; `None`
/// stands for an infinite endpoint.
pub fn count_roots_in_interval(p: &[Rational], lo: Option<&Rational>, hi: Option<&Rational>) -> Result<usize> {
    if degree(p).is_none() {
        return Err(Error::ZeroPolynomial);
    }
    if let (Some(a), Some(b)) = (lo, hi) {
        if a >= b {
            return Ok(0);
        }
    }
    let seq = sturm_sequence(&squarefree_part(p));
    let v_lo = match lo {
        Some(a) => variations(seq.iter().map(|q| sign_near(q, a, true))),
        None => variations(seq.iter().map(|q| sign_at_infinity(q, false))),
    };
    let v_hi = match hi {
        Some(b) => variations(seq.iter().map(|q| sign_near(q, b, false))),
        None => variations(seq.iter().map(|q| sign_at_infinity(q, true))),
    };
    Ok(v_lo - v_hi)
}

/// Number of distinct roots in `(0, ∞)` of a univariate polynomial.
pub fn sturm_positive_roots(p: &SparsePolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = p
        .to_univariate()
        .ok_or_else(|| Error::Precondition("polynomial is not univariate".into()))?;
    count_roots_in_interval(&coeffs, Some(&Rational::zero()), None)
}

/// Evaluates a dense polynomial by Horner's rule.
pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Monic product of `(x - r)` over the given roots.
pub fn from_roots(roots: &[Rational]) -> Univariate {
    roots.iter().fold(vec![Rational::one()], |acc, r| {
        let mut out = vec![Rational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * r;
        }
        out
    })
}
