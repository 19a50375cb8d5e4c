//! Multistart damped Newton in logarithmic coordinates. Heuristic only.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use super::counting::CosetCountingSystem;
use crate::exactalg::rng_from_seed;
use crate::polyring::poly::rational_to_f64;
use crate::polyring::SparsePolynomial;

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOptions {
    pub starts: usize,
    /// Converged when every scaled residual is below this.
    pub residual: f64,
    /// Solutions closer than this in log coordinates are merged.
    pub cluster_radius: f64,
    /// Solutions with a coordinate at or below this are discarded.
    pub positivity_margin: f64,
    pub max_iterations: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            starts: 200,
            residual: 1e-12,
            cluster_radius: 1e-6,
            positivity_margin: 1e-9,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonSummary {
    /// Distinct positive solutions found.
    pub solutions: Vec<Vec<f64>>,
    pub starts: usize,
}

struct Equations {
    polys: Vec<SparsePolynomial>,
    /// `grad[i][k]` is the derivative of equation `i` in `x_k`.
    grad: Vec<Vec<SparsePolynomial>>,
    /// Absolute-value versions for residual scaling.
    scale: Vec<SparsePolynomial>,
}

impl Equations {
    fn new(h: &CosetCountingSystem) -> Self {
        let mut polys = h.polynomials();
        polys.extend(h.linear_polynomials());
        let n = h.base.n();
        let grad = polys.iter().map(|p| (0..n).map(|k| p.derivative(k)).collect()).collect();
        let scale = polys
            .iter()
            .map(|p| {
                SparsePolynomial::from_terms(p.variables(), p.terms().map(|(m, c)| (m.0.clone(), num::Signed::abs(c))))
            })
            .collect();
        Self { polys, grad, scale }
    }

    fn residual(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| p.evaluate_f64(x)))
    }

    fn scaled_residual(&self, x: &[f64]) -> f64 {
        self.polys
            .iter()
            .zip(&self.scale)
            .map(|(p, s)| {
                let denom = s.evaluate_f64(x).max(f64::MIN_POSITIVE);
                (p.evaluate_f64(x) / denom).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Jacobian with respect to `y = log x`.
    fn jacobian_log(&self, x: &[f64]) -> DMatrix<f64> {
        let n = x.len();
        DMatrix::from_fn(self.polys.len(), n, |i, k| self.grad[i][k].evaluate_f64(x) * x[k])
    }
}

fn newton_from(eq: &Equations, mut y: Vec<f64>, opts: &NewtonOptions) -> Option<Vec<f64>> {
    let to_x = |y: &[f64]| y.iter().map(|v| v.exp()).collect::<Vec<f64>>();
    let mut x = to_x(&y);
    let mut norm = eq.residual(&x).norm();
    for _ in 0..opts.max_iterations {
        if !norm.is_finite() {
            return None;
        }
        if eq.scaled_residual(&x) < opts.residual {
            return Some(x);
        }
        let j = eq.jacobian_log(&x);
        let r = eq.residual(&x);
        let step = j.lu().solve(&(-r))?;
        let max = step.amax();
        let mut t = if max > 2.0 { 2.0 / max } else { 1.0 };
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> = y.iter().zip(step.iter()).map(|(a, d)| a + t * d).collect();
            let tx = to_x(&trial);
            let tn = eq.residual(&tx).norm();
            if tn.is_finite() && tn < norm {
                y = trial;
                x = tx;
                norm = tn;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            return (eq.scaled_residual(&x) < opts.residual).then_some(x);
        }
    }
    (eq.scaled_residual(&x) < opts.residual).then_some(x)
}

/// Runs damped Newton from random starts around the base point and returns
/// the distinct positive solutions.
pub fn multistart_newton(h: &CosetCountingSystem, opts: &NewtonOptions, seed: u64) -> NewtonSummary {
    let eq = Equations::new(h);
    let base: Vec<f64> = h.p.iter().map(|v| rational_to_f64(v).ln()).collect();
    let mut rng = rng_from_seed(seed);
    let mut solutions: Vec<Vec<f64>> = Vec::new();
    for _ in 0..opts.starts {
        let y0: Vec<f64> = base.iter().map(|b| b + rng.random_range(-3.0..3.0)).collect();
        let Some(x) = newton_from(&eq, y0, opts) else { continue };
        if x.iter().any(|&v| v <= opts.positivity_margin) {
            continue;
        }
        let logs: Vec<f64> = x.iter().map(|v| v.ln()).collect();
        let duplicate = solutions.iter().any(|s| {
            s.iter()
                .zip(&logs)
                .all(|(a, b)| (a.ln() - b).abs() < opts.cluster_radius)
        });
        if !duplicate {
            solutions.push(x);
        }
    }
    solutions.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    NewtonSummary {
        solutions,
        starts: opts.starts,
    }
}
