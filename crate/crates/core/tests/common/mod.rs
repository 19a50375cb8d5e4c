//! Strategies, brute-force oracles and checks shared by the property suites
//! and the acceptance run.

#![allow(dead_code)]

use itertools::Itertools;
use num::{BigInt, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use toricity_core::exactalg::{determinant, lattice_contained, rank, rat, ratio, IntegerMatrix, Rational, RationalMatrix};
use toricity_core::polyhedra::{mixed_volume, SupportSet};
use toricity_core::polyring::sturm::count_roots_in_interval;
use toricity_core::polyring::{det_symbolic, PolyMatrix, SparsePolynomial};
use toricity_core::toricity::{
    invariance_group, matroid_partition, quasihomogeneity_weights, GroupMode, MatroidPartition, VerticalSystem,
};

pub type Rows = Vec<Vec<i64>>;

pub fn matrix_strategy(
    rows: std::ops::RangeInclusive<usize>,
    cols: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Rows> {
    (rows, cols).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(lo..=hi, c), r))
}

pub fn to_rational(rows: &[Vec<i64>]) -> RationalMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RationalMatrix::from_i64(&refs)
}

pub fn to_integer(rows: &[Vec<i64>]) -> IntegerMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntegerMatrix::from_i64(&refs)
}

/// Partition from all minimal dependent column sets, found by subset enumeration.
pub fn brute_force_partition(c: &RationalMatrix) -> MatroidPartition {
    let m = c.cols();
    let rank_of = |s: &[usize]| if s.is_empty() { 0 } else { rank(&c.select_columns(s)) };
    let mut circuits = Vec::new();
    for size in 1..=m {
        for s in (0..m).combinations(size) {
            if rank_of(&s) == size - 1
                && s.iter().all(|&i| {
                    let rest: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
                    rank_of(&rest) == size - 1
                })
            {
                circuits.push(s);
            }
        }
    }
    MatroidPartition::from_sets(m, &circuits)
}

/// Convex hull area of planar points, doubled, by monotone chain and shoelace.
pub fn doubled_area(points: &[(i64, i64)]) -> i64 {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    let n = hull.len();
    (0..n)
        .map(|i| hull[i].0 * hull[(i + 1) % n].1 - hull[(i + 1) % n].0 * hull[i].1)
        .sum::<i64>()
        .abs()
}

fn minkowski(p: &[(i64, i64)], q: &[(i64, i64)]) -> Vec<(i64, i64)> {
    p.iter().flat_map(|a| q.iter().map(move |b| (a.0 + b.0, a.1 + b.1))).collect()
}

fn support(points: &[(i64, i64)]) -> SupportSet {
    SupportSet::new(2, points.iter().map(|&(x, y)| vec![x, y]).collect()).unwrap()
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn partition_case() -> impl Strategy<Value = Rows> {
    matrix_strategy(1..=4, 1..=8, -2, 2)
}

pub fn check_partition(c: Rows) -> Result<(), TestCaseError> {
    let cm = to_rational(&c);
    prop_assume!(rank(&cm) > 0);
    let m = IntegerMatrix::zeros(1, cm.cols());
    let sys = VerticalSystem::new(cm.clone(), m).unwrap();
    let ours = MatroidPartition::from_sets(cm.cols(), &matroid_partition(&sys).blocks);
    prop_assert_eq!(ours, brute_force_partition(&cm));
    Ok(())
}

pub fn blocks_case() -> impl Strategy<Value = (Rows, Rows)> {
    (1usize..=3, 2usize..=7, 1usize..=4).prop_flat_map(|(s, cols, n)| {
        (
            prop::collection::vec(prop::collection::vec(-2i64..=2, cols), s),
            prop::collection::vec(prop::collection::vec(0i64..=3, cols), n),
        )
    })
}

/// `A (M_i - M_j) = 0` for columns in one block, and quasihomogeneity
/// weights lie in the invariance lattice.
pub fn check_blocks((c, m): (Rows, Rows)) -> Result<(), TestCaseError> {
    let cm = to_rational(&c);
    prop_assume!(rank(&cm) > 0);
    let sys = VerticalSystem::new(cm, to_integer(&m)).unwrap();
    for mode in [GroupMode::Positive, GroupMode::ComplexStar] {
        let Ok(inv) = invariance_group(&sys, mode) else { continue };
        for block in &inv.partition.blocks {
            for (&i, &j) in block.iter().tuple_windows() {
                let diff: Vec<BigInt> =
                    (0..sys.n()).map(|r| sys.exponents().get(r, i) - sys.exponents().get(r, j)).collect();
                prop_assert!(inv.a.mul_vec(&diff).unwrap().iter().all(Zero::is_zero));
            }
        }
        prop_assert!(lattice_contained(&quasihomogeneity_weights(&sys), &inv.a));
    }
    Ok(())
}

pub type Points = Vec<(i64, i64)>;

pub fn planar_case() -> impl Strategy<Value = (Points, Points)> {
    (
        prop::collection::vec((0i64..=4, 0i64..=4), 1..=5),
        prop::collection::vec((0i64..=4, 0i64..=4), 1..=5),
    )
}

/// `MV(P, Q) = vol(P + Q) - vol(P) - vol(Q)` in the plane.
pub fn check_planar_mixed_volume((p, q): (Points, Points)) -> Result<(), TestCaseError> {
    let mv = mixed_volume(&[support(&p), support(&q)]).unwrap();
    let expected = (doubled_area(&minkowski(&p, &q)) - doubled_area(&p) - doubled_area(&q)) / 2;
    prop_assert_eq!(mv, BigInt::from(expected));
    Ok(())
}

pub type RootSpec = (Vec<(i64, i64, u32)>, i64, i64);

pub fn sturm_case() -> impl Strategy<Value = RootSpec> {
    (
        prop::collection::vec((-12i64..=12, 1i64..=4, 1u32..=2), 0..=5),
        0i64..=3,
        prop::sample::select(vec![-3i64, -1, 1, 2]),
    )
}

/// Builds `lead * prod (t - r)^mult * (t^2 + quadratic)` and compares the
/// Sturm counts with the roots it was built from.
pub fn check_sturm((roots, quadratic, lead): RootSpec) -> Result<(), TestCaseError> {
    let mut p: Vec<Rational> = vec![rat(lead)];
    let mut distinct: Vec<Rational> = Vec::new();
    for &(num, den, mult) in &roots {
        let r = ratio(num, den);
        for _ in 0..mult {
            p = mul(&p, &[-r.clone(), rat(1)]);
        }
        if !distinct.contains(&r) {
            distinct.push(r);
        }
    }
    if quadratic > 0 {
        p = mul(&p, &[rat(quadratic), rat(0), rat(1)]);
    }
    let positive = distinct.iter().filter(|r| r.is_positive()).count();
    prop_assert_eq!(count_roots_in_interval(&p, Some(&rat(0)), None).unwrap(), positive);
    let lo = ratio(-3, 2);
    let hi = ratio(5, 3);
    let inside = distinct.iter().filter(|r| **r > lo && **r < hi).count();
    prop_assert_eq!(count_roots_in_interval(&p, Some(&lo), Some(&hi)).unwrap(), inside);
    prop_assert_eq!(count_roots_in_interval(&p, None, None).unwrap(), distinct.len());
    Ok(())
}

pub type PolyEntries = Vec<Vec<(Vec<u32>, i64)>>;

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), -3i64..=3), 0..=3)
}

pub fn determinant_case() -> impl Strategy<Value = (PolyEntries, Rows)> {
    (
        (1usize..=4).prop_flat_map(|k| prop::collection::vec(poly_strategy(3), k * k)),
        prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 10),
    )
}

/// Symbolic determinant evaluated at each point equals the determinant of
/// the evaluated matrix.
pub fn check_determinant((entries, points): (PolyEntries, Rows)) -> Result<(), TestCaseError> {
    let vars = SparsePolynomial::names("y", 3);
    let k = (entries.len() as f64).sqrt() as usize;
    let polys: Vec<SparsePolynomial> = entries
        .iter()
        .map(|terms| SparsePolynomial::from_terms(&vars, terms.iter().map(|(e, c)| (e.clone(), rat(*c)))))
        .collect();
    let matrix = PolyMatrix::from_fn(k, k, |i, j| polys[i * k + j].clone());
    let det = det_symbolic(&matrix, &vars).unwrap();
    for pt in &points {
        let point: Vec<Rational> = pt.iter().map(|&v| rat(v)).collect();
        let numeric = RationalMatrix::from_fn(k, k, |i, j| polys[i * k + j].evaluate(&point));
        prop_assert_eq!(det.evaluate(&point), determinant(&numeric));
    }
    Ok(())
}
