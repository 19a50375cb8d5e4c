use itertools::Itertools;
use num::{One, Zero};

use super::invariance::InvarianceResult;
use super::system::VerticalSystem;
use crate::error::{Error, Result};
use crate::exactalg::{kernel_matrix, rank, rng_from_seed, random_vector, Rational, RationalMatrix};
use crate::polyhedra::extreme_rays;
use crate::polyring::{det_symbolic, PolyMatrix, SignVerdict, SparsePolynomial};

/// Random kernel vectors tried before the exact minor sweep.
pub const RANDOM_ATTEMPTS: usize = 6;
/// Largest `s` for which the exact minor sweep is attempted.
pub const EXACT_SWEEP_LIMIT: usize = 6;
/// Cap on the number of maximal minors examined symbolically.
pub const MINOR_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nondegeneracy {
    Yes(Vec<Rational>),
    No,
    Undetermined,
}

impl Nondegeneracy {
    pub fn is_yes(&self) -> bool {
        matches!(self, Nondegeneracy::Yes(_))
    }
}

/// Certificate that `rank(C diag(w) M^T) = s` for every positive kernel vector `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AllPositiveNondegeneracy {
    Yes {
        /// Columns of the sign-definite maximal minor.
        columns: Vec<usize>,
        /// The minor as a polynomial in the ray coefficients `lambda1, ...`.
        minor: SparsePolynomial,
        rays: Vec<Vec<Rational>>,
    },
    Unknown,
}

impl AllPositiveNondegeneracy {
    pub fn is_yes(&self) -> bool {
        matches!(self, AllPositiveNondegeneracy::Yes { .. })
    }
}

/// `C diag(W λ) M^T` as a matrix of linear forms in the variables `vars[offset..]`,
/// where the columns of `w` are the generators.
fn symbolic_cdm(sys: &VerticalSystem, w: &RationalMatrix, vars: &[String], offset: usize) -> PolyMatrix {
    let (s, n, m) = (sys.s(), sys.n(), sys.m());
    let mm = sys.exponents().to_rational();
    PolyMatrix::from_fn(s, n, |i, l| {
        let mut p = SparsePolynomial::zero(vars);
        for t in 0..w.cols() {
            let coeff: Rational = (0..m).map(|j| sys.c().get(i, j) * mm.get(l, j) * w.get(j, t)).sum();
            if !coeff.is_zero() {
                p = &p + &SparsePolynomial::var(vars, offset + t).scale(&coeff);
            }
        }
        p
    })
}

/// Decides whether `rank(C diag(w) M^T) = s` for some `w ∈ ker(C)`.
pub fn nondegeneracy(sys: &VerticalSystem, seed: u64) -> Nondegeneracy {
    let s = sys.s();
    let k = kernel_matrix(sys.c());
    if s == 0 {
        return Nondegeneracy::Yes(vec![Rational::one(); sys.m()]);
    }
    if k.cols() == 0 {
        return Nondegeneracy::No;
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let lambda = random_vector(&mut rng, k.cols());
        let w = k.mul_vec(&lambda).expect("shape");
        if rank(&sys.c_diag_w_mt(&w)) == s {
            return Nondegeneracy::Yes(w);
        }
    }
    if s > EXACT_SWEEP_LIMIT || s > sys.n() {
        return if s > sys.n() { Nondegeneracy::No } else { Nondegeneracy::Undetermined };
    }
    let vars = SparsePolynomial::names("lambda", k.cols());
    let sym = symbolic_cdm(sys, &k, &vars, 0);
    let mut nonzero_minor = None;
    for (count, cols) in (0..sys.n()).combinations(s).enumerate() {
        if count >= MINOR_LIMIT {
            return Nondegeneracy::Undetermined;
        }
        let minor = det_symbolic(&sym.select_columns(&cols), &vars).expect("size within limit");
        if !minor.is_zero() {
            nonzero_minor = Some(minor);
            break;
        }
    }
    let Some(minor) = nonzero_minor else {
        return Nondegeneracy::No;
    };
    for _ in 0..50 {
        let lambda = random_vector(&mut rng, k.cols());
        if !minor.evaluate(&lambda).is_zero() {
            return Nondegeneracy::Yes(k.mul_vec(&lambda).expect("shape"));
        }
    }
    Nondegeneracy::Undetermined
}

/// Sufficient test for full rank on every positive kernel vector: writes
/// `w = Σ λ_k r_k` over the extreme rays and looks for a maximal minor whose
/// coefficients all share one sign.
pub fn nondegeneracy_all_positive(sys: &VerticalSystem) -> AllPositiveNondegeneracy {
    let s = sys.s();
    let rays = extreme_rays(sys.c());
    if rays.is_empty() || s > sys.n() || s > crate::polyring::DET_SIZE_LIMIT {
        return AllPositiveNondegeneracy::Unknown;
    }
    let r = rays.as_columns();
    let vars = SparsePolynomial::names("lambda", r.cols());
    let sym = symbolic_cdm(sys, &r, &vars, 0);
    for (count, cols) in (0..sys.n()).combinations(s).enumerate() {
        if count >= MINOR_LIMIT {
            break;
        }
        let minor = det_symbolic(&sym.select_columns(&cols), &vars).expect("size within limit");
        if minor.sign_classify().is_definite() {
            return AllPositiveNondegeneracy::Yes {
                columns: cols,
                minor,
                rays: (0..r.cols()).map(|j| r.column(j)).collect(),
            };
        }
    }
    AllPositiveNondegeneracy::Unknown
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalToricity {
    NotLocallyToric,
    GenericallyLocallyToric,
    /// Locally toric for every positive parameter value.
    LocallyToric,
}

/// Dimension test: with `F` nondegenerate, generic local toricity holds iff `s + d = n`.
pub fn local_toricity(
    sys: &VerticalSystem,
    inv: &InvarianceResult,
    nd: &Nondegeneracy,
    all_positive: Option<&AllPositiveNondegeneracy>,
) -> Result<LocalToricity> {
    let (s, d, n) = (sys.s(), inv.d, sys.n());
    if !nd.is_yes() {
        return Err(Error::Precondition("local toricity requires nondegeneracy".into()));
    }
    if s + d < n {
        return Ok(LocalToricity::NotLocallyToric);
    }
    if s + d > n {
        return Err(Error::InternalInconsistency(format!(
            "nondegenerate system with s + d = {} > n = {n}",
            s + d
        )));
    }
    Ok(match all_positive {
        Some(ap) if ap.is_yes() => LocalToricity::LocallyToric,
        _ => LocalToricity::GenericallyLocallyToric,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injectivity {
    /// The determinant has coefficients of one sign: at most one coset.
    Toric { det: SparsePolynomial },
    Inconclusive { reason: String, det: Option<SparsePolynomial> },
}

impl Injectivity {
    pub fn is_toric(&self) -> bool {
        matches!(self, Injectivity::Toric { .. })
    }

    pub fn determinant(&self) -> Option<&SparsePolynomial> {
        match self {
            Injectivity::Toric { det } => Some(det),
            Injectivity::Inconclusive { det, .. } => det.as_ref(),
        }
    }
}

/// Variables `mu1..mum, alpha1..alphan` of the injectivity matrix.
pub fn injectivity_variables(sys: &VerticalSystem) -> Vec<String> {
    let mut v = SparsePolynomial::names("mu", sys.m());
    v.extend(SparsePolynomial::names("alpha", sys.n()));
    v
}

/// `[C diag(μ) M^T diag(α); A]` with symbolic `μ` and `α`.
pub fn injectivity_matrix(sys: &VerticalSystem, a: &crate::exactalg::IntegerMatrix) -> PolyMatrix {
    let vars = injectivity_variables(sys);
    let (s, n, m) = (sys.s(), sys.n(), sys.m());
    let mm = sys.exponents();
    PolyMatrix::from_fn(s + a.rows(), n, |i, k| {
        if i < s {
            let mut p = SparsePolynomial::zero(&vars);
            for j in 0..m {
                let coeff = sys.c().get(i, j) * Rational::from_integer(mm.get(k, j).clone());
                if coeff.is_zero() {
                    continue;
                }
                let mono = &SparsePolynomial::var(&vars, j) * &SparsePolynomial::var(&vars, m + k);
                p = &p + &mono.scale(&coeff);
            }
            p
        } else {
            SparsePolynomial::constant(&vars, Rational::from_integer(a.get(i - s, k).clone()))
        }
    })
}

/// Toric iff the determinant of the injectivity matrix is nonzero with all
/// coefficients of one sign.
pub fn injectivity_test(sys: &VerticalSystem, inv: &InvarianceResult) -> Injectivity {
    if sys.s() + inv.d != sys.n() {
        return Injectivity::Inconclusive {
            reason: format!("requires d = n - s, got s = {}, d = {}, n = {}", sys.s(), inv.d, sys.n()),
            det: None,
        };
    }
    let vars = injectivity_variables(sys);
    match det_symbolic(&injectivity_matrix(sys, &inv.a), &vars) {
        Ok(det) => match det.sign_classify() {
            SignVerdict::AllPositive | SignVerdict::AllNegative => Injectivity::Toric { det },
            SignVerdict::ZeroPolynomial => Injectivity::Inconclusive {
                reason: "determinant vanishes identically".into(),
                det: Some(det),
            },
            SignVerdict::MixedSigns => Injectivity::Inconclusive {
                reason: "determinant has coefficients of both signs".into(),
                det: Some(det),
            },
        },
        Err(e) => Injectivity::Inconclusive {
            reason: e.to_string(),
            det: None,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentedRank {
    /// `det[C diag(w) M^T diag(h); A]` is sign-definite in `λ` and `h`.
    Yes { det: SparsePolynomial },
    Unknown { det: Option<SparsePolynomial> },
}

impl AugmentedRank {
    pub fn is_yes(&self) -> bool {
        matches!(self, AugmentedRank::Yes { .. })
    }
}

/// Sufficient test that `[C diag(w) M^T diag(h); A]` has rank `n` for all
/// positive kernel vectors `w` and positive `h`.
pub fn augmented_rank_all_positive(sys: &VerticalSystem, inv: &InvarianceResult) -> AugmentedRank {
    let (s, n) = (sys.s(), sys.n());
    let rays = extreme_rays(sys.c());
    if s + inv.d != n || rays.is_empty() || n > crate::polyring::DET_SIZE_LIMIT {
        return AugmentedRank::Unknown { det: None };
    }
    let r = rays.as_columns();
    let mut vars = SparsePolynomial::names("lambda", r.cols());
    vars.extend(SparsePolynomial::names("h", n));
    let sym = symbolic_cdm(sys, &r, &vars, 0);
    let k = r.cols();
    let full = PolyMatrix::from_fn(n, n, |i, l| {
        if i < s {
            &sym.get(i, l).clone() * &SparsePolynomial::var(&vars, k + l)
        } else {
            SparsePolynomial::constant(&vars, Rational::from_integer(inv.a.get(i - s, l).clone()))
        }
    });
    match det_symbolic(&full, &vars) {
        Ok(det) if det.sign_classify().is_definite() => AugmentedRank::Yes { det },
        Ok(det) => AugmentedRank::Unknown { det: Some(det) },
        Err(_) => AugmentedRank::Unknown { det: None },
    }
}
