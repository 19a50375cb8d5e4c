//! Double description method for pointed polyhedral cones.

use num::{Signed, Zero};

use crate::exactalg::{kernel_matrix, primitive_integer_vector, rank, Integer, Rational, RationalMatrix};

/// Extreme rays of `ker(m) ∩ R^n_{≥0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRays {
    pub rays: Vec<Vec<Integer>>,
    pub ambient_dim: usize,
}

impl ConeRays {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Rays as the columns of an `ambient_dim x k` rational matrix.
    pub fn as_columns(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.ambient_dim, self.rays.len(), |i, j| {
            Rational::from_integer(self.rays[j][i].clone())
        })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of the pointed cone `{y : g y ≥ 0}`.
///
/// Panics if the cone is not pointed (`rank(g)` below the number of columns).
pub fn cone_extreme_rays(g: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (k, p) = g.shape();
    if p == 0 {
        return Vec::new();
    }
    assert_eq!(rank(g), p, "cone is not pointed");
    // Greedily pick p independent constraints to start from a simplicial cone.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..k {
        let mut trial = chosen.clone();
        trial.push(i);
        if rank(&g.select_rows(&trial)) == trial.len() {
            chosen = trial;
        }
        if chosen.len() == p {
            break;
        }
    }
    let base = g.select_rows(&chosen);
    // Columns of base^{-1} are the initial rays: base * r_j = e_j.
    let mut rays: Vec<Vec<Rational>> = Vec::with_capacity(p);
    for j in 0..p {
        let mut e = vec![Rational::zero(); p];
        e[j] = Rational::from_integer(1.into());
        rays.push(crate::exactalg::solve(&base, &e).expect("invertible"));
    }
    let mut processed: Vec<usize> = chosen.clone();
    let mut zero_sets: Vec<Vec<bool>> = rays
        .iter()
        .map(|r| (0..k).map(|i| processed.contains(&i) && dot(g.row(i), r).is_zero()).collect())
        .collect();

    for i in (0..k).filter(|i| !chosen.contains(i)) {
        let values: Vec<Rational> = rays.iter().map(|r| dot(g.row(i), r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_negative()).collect();
        let zero: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_zero()).collect();
        let mut new_rays = Vec::new();
        let mut new_zero = Vec::new();
        for &a in &pos {
            for &b in &neg {
                let common: Vec<usize> = processed
                    .iter()
                    .copied()
                    .filter(|&c| zero_sets[a][c] && zero_sets[b][c])
                    .collect();
                if common.len() + 2 < p {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&o| o != a && o != b)
                    .all(|o| !common.iter().all(|&c| zero_sets[o][c]));
                if !adjacent {
                    continue;
                }
                let r: Vec<Rational> = rays[b]
                    .iter()
                    .zip(&rays[a])
                    .map(|(rb, ra)| &values[a] * rb - &values[b] * ra)
                    .collect();
                let mut z = vec![false; k];
                for &c in &common {
                    z[c] = true;
                }
                z[i] = true;
                new_rays.push(r);
                new_zero.push(z);
            }
        }
        let mut next_rays = Vec::new();
        let mut next_zero = Vec::new();
        for j in pos.iter().chain(&zero) {
            let mut z = zero_sets[*j].clone();
            z[i] = values[*j].is_zero();
            next_rays.push(rays[*j].clone());
            next_zero.push(z);
        }
        next_rays.extend(new_rays);
        next_zero.extend(new_zero);
        rays = next_rays;
        zero_sets = next_zero;
        processed.push(i);
    }
    rays
}

/// Extreme rays of `ker(m) ∩ R^n_{≥0}` as primitive integer vectors, sorted
/// in decreasing lexicographic order.
pub fn extreme_rays(m: &RationalMatrix) -> ConeRays {
    let n = m.cols();
    let k = kernel_matrix(m);
    if k.cols() == 0 {
        return ConeRays {
            rays: Vec::new(),
            ambient_dim: n,
        };
    }
    let lambda_rays = cone_extreme_rays(&k);
    let mut rays: Vec<Vec<Integer>> = lambda_rays
        .iter()
        .map(|l| primitive_integer_vector(&k.mul_vec(l).expect("shape")))
        .collect();
    rays.sort_by(|a, b| b.cmp(a));
    rays.dedup();
    ConeRays { rays, ambient_dim: n }
}
