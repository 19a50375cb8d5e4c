use num::{Signed, Zero};

use super::invariance::InvarianceResult;
use super::newton::{multistart_newton, NewtonOptions, NewtonSummary};
use super::system::VerticalSystem;
use crate::error::{Error, Result};
use crate::exactalg::{
    kernel_matrix, primitive_integer_vector, rank, rng_from_seed, Integer, IntegerMatrix, Rational,
};
use crate::polyhedra::{mixed_volume, SupportSet};
use crate::polyring::sturm::{count_roots_in_interval, Univariate};
use crate::polyring::SparsePolynomial;

/// The system `(C (κ ∘ x^M), A x − b)` whose positive zeros are in bijection
/// with the cosets in the positive zero set of `F_κ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCountingSystem {
    pub base: VerticalSystem,
    pub a: IntegerMatrix,
    pub kappa: Vec<Rational>,
    pub b: Vec<Rational>,
    /// A positive point with `A p = b`.
    pub p: Vec<Rational>,
}

/// Builds the coset counting system with `b = A p` for a random positive `p`.
pub fn coset_counting_system(
    sys: &VerticalSystem,
    inv: &InvarianceResult,
    kappa: &[Rational],
    seed: u64,
) -> Result<CosetCountingSystem> {
    use rand::Rng;
    let mut rng = rng_from_seed(seed);
    let p: Vec<Rational> = (0..sys.n())
        .map(|_| Rational::new(Integer::from(rng.random_range(1..=1024i64)), Integer::from(256)))
        .collect();
    coset_counting_system_at(sys, inv, kappa, &p)
}

/// Builds the coset counting system with `b = A p` for the given positive `p`.
pub fn coset_counting_system_at(
    sys: &VerticalSystem,
    inv: &InvarianceResult,
    kappa: &[Rational],
    p: &[Rational],
) -> Result<CosetCountingSystem> {
    if sys.s() + inv.d != sys.n() {
        return Err(Error::Precondition(format!(
            "coset counting needs d = n - s, got s = {}, d = {}, n = {}",
            sys.s(),
            inv.d,
            sys.n()
        )));
    }
    if kappa.len() != sys.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} parameter values for {} parameters",
            kappa.len(),
            sys.m()
        )));
    }
    if kappa.iter().any(|k| !k.is_positive()) {
        return Err(Error::Precondition("parameter values must be positive".into()));
    }
    if p.len() != sys.n() || p.iter().any(|x| !x.is_positive()) {
        return Err(Error::Precondition("the base point must be positive of length n".into()));
    }
    let b = inv.a.to_rational().mul_vec(p)?;
    Ok(CosetCountingSystem {
        base: sys.clone(),
        a: inv.a.clone(),
        kappa: kappa.to_vec(),
        b,
        p: p.to_vec(),
    })
}

impl CosetCountingSystem {
    /// The polynomials of `F_κ`, Laurent monomials cleared.
    pub fn polynomials(&self) -> Vec<SparsePolynomial> {
        self.base.polynomials(&self.kappa).expect("validated at construction")
    }

    /// The linear equations `a_i · x − b_i`.
    pub fn linear_polynomials(&self) -> Vec<SparsePolynomial> {
        let vars = self.base.variables();
        (0..self.a.rows())
            .map(|i| {
                let mut terms: Vec<(Vec<u32>, Rational)> = (0..vars.len())
                    .map(|k| {
                        let mut e = vec![0; vars.len()];
                        e[k] = 1;
                        (e, Rational::from_integer(self.a.get(i, k).clone()))
                    })
                    .collect();
                terms.push((vec![0; vars.len()], -self.b[i].clone()));
                SparsePolynomial::from_terms(vars, terms)
            })
            .collect()
    }

    /// Newton polytope generators of every equation for generic parameters.
    pub fn supports(&self) -> Vec<SupportSet> {
        coset_supports(&self.base, &self.a)
    }

    /// Text exchange format for external solvers.
    pub fn exchange_format(&self) -> String {
        let mut out = String::from("# coset counting system\n");
        out.push_str(&format!("variables: {}\n", self.base.variables().join(", ")));
        out.push_str("polynomials:\n");
        for p in self.polynomials() {
            out.push_str(&format!("{p}\n"));
        }
        out.push_str("linear:\n");
        for l in self.linear_polynomials() {
            out.push_str(&format!("{l}\n"));
        }
        out
    }
}

/// Supports of `(C (κ ∘ x^M), A x − b)` with generic `κ` and `b`.
pub fn coset_supports(sys: &VerticalSystem, a: &IntegerMatrix) -> Vec<SupportSet> {
    let n = sys.n();
    let mut supports = sys.supports();
    for i in 0..a.rows() {
        let mut pts = vec![vec![0; n]];
        for k in 0..n {
            if !a.get(i, k).is_zero() {
                let mut e = vec![0; n];
                e[k] = 1;
                pts.push(e);
            }
        }
        supports.push(SupportSet::new(n, pts).expect("dimension"));
    }
    supports
}

/// Mixed volume of the coset counting system: a bound on the number of
/// cosets for generic parameters.
pub fn coset_mixed_volume(sys: &VerticalSystem, inv: &InvarianceResult) -> Result<Integer> {
    if sys.s() + inv.d != sys.n() {
        return Err(Error::Precondition("mixed volume needs d = n - s".into()));
    }
    mixed_volume(&coset_supports(sys, &inv.a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetCount {
    /// Certified by exact root counting.
    Exact(usize),
    /// Distinct converged multistart Newton solutions; not certified.
    Heuristic { count: usize, starts: usize },
    /// System written in the exchange format for an external solver.
    Exported(String),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CountOptions {
    pub newton: NewtonOptions,
    /// Export instead of running Newton when `s ≥ 2`.
    pub export: bool,
    pub seed: u64,
}


/// The one-parameter slice used for `s = 1`: the polynomial `g(t)` obtained
/// by substituting `x = p + t v` (with `ker(A) = span(v)`) into the single
/// equation, and the open interval of `t` where `x` stays positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSlice {
    pub direction: Vec<Integer>,
    pub polynomial: Univariate,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

pub fn univariate_slice(h: &CosetCountingSystem) -> Result<UnivariateSlice> {
    let sys = &h.base;
    if sys.s() != 1 {
        return Err(Error::Precondition("the univariate slice needs s = 1".into()));
    }
    let n = sys.n();
    if rank(&h.a.to_rational()) < h.a.rows() {
        return Err(Error::DegenerateSlice(format!("rank of A is below {}", h.a.rows())));
    }
    let k = kernel_matrix(&h.a.to_rational());
    if k.cols() != 1 {
        return Err(Error::DegenerateSlice(format!("kernel of A has dimension {}", k.cols())));
    }
    let v = primitive_integer_vector(&k.column(0));
    let vr: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for (pi, vi) in h.p.iter().zip(&vr) {
        if vi.is_zero() {
            continue;
        }
        let bound = -(pi / vi);
        if vi.is_positive() {
            if lower.as_ref().is_none_or(|l| &bound > l) {
                lower = Some(bound);
            }
        } else if upper.as_ref().is_none_or(|u| &bound < u) {
            upper = Some(bound);
        }
    }
    let f = &h.polynomials()[0];
    let linear: Vec<Univariate> = h.p.iter().zip(&vr).map(|(pi, vi)| vec![pi.clone(), vi.clone()]).collect();
    let mut g: Univariate = Vec::new();
    for (mono, c) in f.terms() {
        let mut term: Univariate = vec![c.clone()];
        for (i, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                term = multiply(&term, &linear[i]);
            }
        }
        add_into(&mut g, &term);
    }
    debug_assert_eq!(linear.len(), n);
    Ok(UnivariateSlice {
        direction: v,
        polynomial: crate::polyring::sturm::trim(g),
        lower,
        upper,
    })
}

fn multiply(a: &[Rational], b: &[Rational]) -> Univariate {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(acc: &mut Univariate, p: &[Rational]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rational::zero());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x;
    }
}

/// Number of positive zeros of the coset counting system.
pub fn count_positive_cosets(h: &CosetCountingSystem, options: &CountOptions) -> Result<CosetCount> {
    let s = h.base.s();
    if s == 0 {
        return Ok(CosetCount::Exact(1));
    }
    if s == 1 {
        let slice = univariate_slice(h)?;
        if slice.polynomial.is_empty() {
            return Err(Error::NonIsolatedZeros);
        }
        let count = count_roots_in_interval(&slice.polynomial, slice.lower.as_ref(), slice.upper.as_ref())?;
        return Ok(CosetCount::Exact(count));
    }
    if options.export {
        return Ok(CosetCount::Exported(h.exchange_format()));
    }
    let NewtonSummary { solutions, starts } = multistart_newton(h, &options.newton, options.seed);
    Ok(CosetCount::Heuristic {
        count: solutions.len(),
        starts,
    })
}
