use num::Zero;

use crate::exactalg::{integer_kernel_basis, IntegerMatrix, LatticeMode, RationalMatrix};
use crate::polyring::{det_symbolic, PolyMatrix, SignVerdict, SparsePolynomial};
use crate::toricity::{InvarianceResult, VerticalSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multistationarity {
    /// Some compatibility class contains two positive zeros for some κ.
    Multistationary { det: SparsePolynomial },
    /// No compatibility class contains two positive zeros, for any κ.
    Monostationary { det: SparsePolynomial },
    Inconclusive { reason: String, det: Option<SparsePolynomial> },
}

impl Multistationarity {
    pub fn identifier(&self) -> &'static str {
        match self {
            Multistationarity::Multistationary { .. } => "multistationary",
            Multistationarity::Monostationary { .. } => "monostationary",
            Multistationarity::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn determinant(&self) -> Option<&SparsePolynomial> {
        match self {
            Multistationarity::Multistationary { det } | Multistationarity::Monostationary { det } => Some(det),
            Multistationarity::Inconclusive { det, .. } => det.as_ref(),
        }
    }
}

/// `Γ = [Bᵀ diag(α); L]` with the columns of `B` an integer basis of `ker(A)`.
pub fn gamma_matrix(a: &IntegerMatrix, l: &RationalMatrix) -> PolyMatrix {
    let n = a.cols();
    let vars = SparsePolynomial::names("alpha", n);
    let b = integer_kernel_basis(&a.transpose(), LatticeMode::IntegerLattice);
    let k = b.rows();
    PolyMatrix::from_fn(k + l.rows(), n, |i, j| {
        if i < k {
            let coef = crate::exactalg::Rational::from_integer(b.get(i, j).clone());
            if coef.is_zero() {
                SparsePolynomial::zero(&vars)
            } else {
                &SparsePolynomial::constant(&vars, coef) * &SparsePolynomial::var(&vars, j)
            }
        } else {
            SparsePolynomial::constant(&vars, l.get(i - k, j).clone())
        }
    })
}

/// Square-determinant criterion for multiple positive zeros in one class
/// `Lx = b`. Monostationarity is only concluded when `toric` holds.
pub fn multistationarity_test(
    sys: &VerticalSystem,
    inv: &InvarianceResult,
    l: &RationalMatrix,
    toric: bool,
) -> Multistationarity {
    let n = sys.n();
    if l.cols() != n {
        return Multistationarity::Inconclusive {
            reason: format!("L has {} columns, expected {n}", l.cols()),
            det: None,
        };
    }
    if l.rows() == 0 {
        return Multistationarity::Inconclusive {
            reason: "no conservation laws; every class is the whole orthant".into(),
            det: None,
        };
    }
    if n - inv.d + l.rows() != n {
        return Multistationarity::Inconclusive {
            reason: format!("Γ is not square: {} + {} rows for {n} columns", n - inv.d, l.rows()),
            det: None,
        };
    }
    let gamma = gamma_matrix(&inv.a, l);
    let det = match det_symbolic(&gamma, &SparsePolynomial::names("alpha", n)) {
        Ok(d) => d,
        Err(e) => {
            return Multistationarity::Inconclusive {
                reason: e.to_string(),
                det: None,
            }
        }
    };
    match det.sign_classify() {
        SignVerdict::MixedSigns | SignVerdict::ZeroPolynomial => Multistationarity::Multistationary { det },
        SignVerdict::AllPositive | SignVerdict::AllNegative if toric => Multistationarity::Monostationary { det },
        _ => Multistationarity::Inconclusive {
            reason: "Γ is nonsingular for all positive α, but without toricity this does not exclude multiple zeros".into(),
            det: Some(det),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcrStatus {
    /// One value of `x_i` across the whole positive zero set.
    Acr,
    /// Finitely many values of `x_i`.
    LocalAcr,
    /// `x_i` is not confined to finitely many values.
    NoAcr,
}

impl AcrStatus {
    pub fn identifier(self) -> &'static str {
        match self {
            AcrStatus::Acr => "acr",
            AcrStatus::LocalAcr => "local_acr",
            AcrStatus::NoAcr => "no_acr",
        }
    }
}

/// Coordinate-robustness flags read off the zero columns of `A`.
/// `locally_toric` and `toric` describe the zero set for all positive κ.
pub fn acr_detect(inv: &InvarianceResult, locally_toric: bool, toric: bool) -> Vec<(usize, AcrStatus)> {
    let mut out = Vec::new();
    for i in 0..inv.a.cols() {
        let zero = inv.a.column(i).iter().all(Zero::is_zero);
        if !zero {
            out.push((i, AcrStatus::NoAcr));
        } else if toric {
            out.push((i, AcrStatus::Acr));
        } else if locally_toric {
            out.push((i, AcrStatus::LocalAcr));
        }
    }
    out
}
