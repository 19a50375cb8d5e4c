//! Exact volumes and mixed volumes of lattice polytopes.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::cone_extreme_rays;
use super::lp::feasible_point;
use crate::error::{Error, Result};
use crate::exactalg::{rank, Integer, Rational, RationalMatrix};

/// Largest dimension accepted by [`mixed_volume`].
pub const MIXED_VOLUME_LIMIT: usize = 8;

/// Finite set of lattice points, the generators of a polytope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportSet {
    points: Vec<Vec<i64>>,
    dim: usize,
}

impl SupportSet {
    /// Sorts and deduplicates the points.
    pub fn new(dim: usize, mut points: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in dimension {dim}",
                p.len()
            )));
        }
        points.sort();
        points.dedup();
        Ok(Self { points, dim })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minkowski sum, reduced to its vertices.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch("Minkowski sum of different dimensions".into()));
        }
        let a = vertices(&self.points);
        let b = vertices(&other.points);
        let mut pts = Vec::with_capacity(a.len() * b.len());
        for p in &a {
            for q in &b {
                pts.push(p.iter().zip(q).map(|(x, y)| x + y).collect());
            }
        }
        let sum = Self::new(self.dim, pts)?;
        Ok(Self {
            points: vertices(&sum.points),
            dim: self.dim,
        })
    }
}

fn to_rational(p: &[i64]) -> Vec<Rational> {
    p.iter().map(|&x| Rational::from_integer(Integer::from(x))).collect()
}

/// Dimension of the affine hull.
pub fn affine_dimension(points: &[Vec<i64>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let diffs = RationalMatrix::from_fn(points.len(), first.len(), |i, j| {
        Rational::from_integer(Integer::from(points[i][j] - first[j]))
    });
    rank(&diffs)
}

/// The points that are not convex combinations of the others.
pub fn vertices(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let dim = pts[0].len();
    let mut keep = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let others: Vec<&Vec<i64>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
        let a = RationalMatrix::from_fn(dim + 1, others.len(), |r, c| {
            if r < dim {
                Rational::from_integer(Integer::from(others[c][r]))
            } else {
                Rational::one()
            }
        });
        let mut b = to_rational(p);
        b.push(Rational::one());
        if feasible_point(&a, &b).is_none() {
            keep.push(p.clone());
        }
    }
    keep
}

/// Euclidean volume of the convex hull; zero when the hull is lower-dimensional.
pub fn polytope_volume(s: &SupportSet) -> Rational {
    if s.points.is_empty() {
        return Rational::zero();
    }
    if s.dim == 0 {
        return Rational::one();
    }
    if affine_dimension(&s.points) < s.dim {
        return Rational::zero();
    }
    volume_full_dim(&vertices(&s.points))
}

/// Volume of a full-dimensional polytope by summing cones over its facets:
/// `vol = Σ_F (β − a·c) vol(π_j F) / (n |a_j|)` for facets `a·x ≤ β`,
/// an inner point `c`, and `π_j` dropping a coordinate with `a_j ≠ 0`.
fn volume_full_dim(points: &[Vec<i64>]) -> Rational {
    let n = points[0].len();
    if n == 1 {
        let lo = points.iter().map(|p| p[0]).min().expect("nonempty");
        let hi = points.iter().map(|p| p[0]).max().expect("nonempty");
        return Rational::from_integer(Integer::from(hi - lo));
    }
    // Cone of valid inequalities (a, β) with β − a·v ≥ 0 for every point v.
    let g = RationalMatrix::from_fn(points.len(), n + 1, |i, j| {
        if j < n {
            Rational::from_integer(Integer::from(-points[i][j]))
        } else {
            Rational::one()
        }
    });
    let count = Rational::from_integer(Integer::from(points.len() as i64));
    let center: Vec<Rational> = (0..n)
        .map(|j| points.iter().map(|p| Rational::from_integer(Integer::from(p[j]))).sum::<Rational>() / &count)
        .collect();
    let nn = Rational::from_integer(Integer::from(n as i64));
    let mut total = Rational::zero();
    for ray in cone_extreme_rays(&g) {
        let (a, beta) = ray.split_at(n);
        let beta = &beta[0];
        let Some(j) = a.iter().position(|x| !x.is_zero()) else { continue };
        let facet: Vec<Vec<i64>> = points
            .iter()
            .filter(|p| {
                let v: Rational = a.iter().zip(p.iter()).map(|(ai, &pi)| ai * Rational::from_integer(Integer::from(pi))).sum();
                &v == beta
            })
            .map(|p| p.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
            .collect();
        let height = beta - a.iter().zip(&center).map(|(x, y)| x * y).sum::<Rational>();
        total += height * volume_full_dim(&facet) / (&nn * a[j].abs());
    }
    total
}

/// Mixed volume in the root-count normalization: for `n` polytopes in `R^n`,
/// `MV = Σ_{∅≠S⊆[n]} (−1)^{n−|S|} vol(Σ_{i∈S} P_i)`, so that `n` copies of
/// one polytope give `n! vol(P)`.
pub fn mixed_volume(supports: &[SupportSet]) -> Result<Integer> {
    let n = supports.len();
    if let Some(s) = supports.iter().find(|s| s.dim != n) {
        return Err(Error::DimensionMismatch(format!(
            "{n} supports in dimension {}",
            s.dim
        )));
    }
    if n == 0 {
        return Ok(Integer::one());
    }
    if n > MIXED_VOLUME_LIMIT {
        return Err(Error::Precondition(format!(
            "mixed volume by inclusion-exclusion is limited to dimension {MIXED_VOLUME_LIMIT}, got {n}"
        )));
    }
    if supports.iter().any(|s| s.points.is_empty()) {
        return Ok(Integer::zero());
    }
    let mut sums: Vec<Option<SupportSet>> = vec![None; 1 << n];
    let mut total = Rational::zero();
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let sum = if rest == 0 {
            SupportSet {
                points: vertices(&supports[low].points),
                dim: n,
            }
        } else {
            sums[rest].as_ref().expect("computed").minkowski_sum(&supports[low])?
        };
        let vol = polytope_volume(&sum);
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += vol;
        } else {
            total -= vol;
        }
        sums[mask] = Some(sum);
    }
    if !total.is_integer() || total.is_negative() {
        return Err(Error::InternalInconsistency(format!("mixed volume evaluated to {total}")));
    }
    Ok(total.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn set(points: &[&[i64]]) -> SupportSet {
        let dim = points[0].len();
        SupportSet::new(dim, points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn unit_square_and_segment() {
        assert_eq!(polytope_volume(&set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])), rat(1));
        assert_eq!(polytope_volume(&set(&[&[0], &[7]])), rat(7));
    }

    #[test]
    fn lower_dimensional_hull() {
        assert_eq!(polytope_volume(&set(&[&[0, 0], &[1, 1], &[2, 2]])), rat(0));
    }

    #[test]
    fn triangle_support_area() {
        // (3,2) lies on the edge from (6,0) to (0,4); shoelace gives 6*4/2.
        let s = set(&[&[0, 0], &[6, 0], &[3, 2], &[0, 4]]);
        assert_eq!(polytope_volume(&s), rat(12));
        assert_eq!(vertices(s.points()).len(), 3);
    }

    #[test]
    fn cube_volume() {
        let mut pts = Vec::new();
        for x in [0, 2] {
            for y in [0, 2] {
                for z in [0, 2] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        pts.push(vec![1, 1, 1]);
        assert_eq!(polytope_volume(&SupportSet::new(3, pts).unwrap()), rat(8));
    }

    #[test]
    fn simplex_mixed_volumes() {
        let simplex = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(mixed_volume(&[simplex.clone(), simplex]).unwrap(), Integer::from(1));
        let line = set(&[&[0], &[1], &[2], &[3], &[4]]);
        assert_eq!(mixed_volume(&[line]).unwrap(), Integer::from(4));
    }

    #[test]
    fn dimension_is_checked() {
        let s = set(&[&[0, 0], &[1, 0]]);
        assert!(matches!(mixed_volume(&[s]), Err(Error::DimensionMismatch(_))));
    }
}
