//! Randomized agreement with brute-force oracles.

mod common;

use num::BigInt;
use proptest::prelude::*;

use common::*;
use toricity_core::exactalg::{rank, ratio, same_row_lattice, IntegerMatrix, Rational};
use toricity_core::toricity::{invariance_group, GroupMode, VerticalSystem};

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn matroid_partition_matches_circuit_enumeration(c in partition_case()) {
        check_partition(c)?;
    }

    #[test]
    fn invariance_is_constant_on_blocks(case in blocks_case()) {
        check_blocks(case)?;
    }

    #[test]
    fn invariance_does_not_depend_on_column_order(
        c in matrix_strategy(1..=3, 2..=6, -2, 2),
        seed in any::<u64>(),
    ) {
        let cm = to_rational(&c);
        prop_assume!(rank(&cm) > 0);
        let cols = cm.cols();
        let m = IntegerMatrix::from_fn(2, cols, |i, j| BigInt::from(((seed >> ((i * cols + j) % 60)) & 3) as i64));
        let sys = VerticalSystem::new(cm.clone(), m.clone()).unwrap();
        let mut perm: Vec<usize> = (0..cols).collect();
        perm.rotate_left((seed % cols as u64) as usize);
        let permuted = VerticalSystem::new(cm.select_columns(&perm), m.select_columns(&perm)).unwrap();
        let a = invariance_group(&sys, GroupMode::ComplexStar);
        prop_assume!(a.is_ok());
        let b = invariance_group(&permuted, GroupMode::ComplexStar).unwrap();
        prop_assert_eq!(a.unwrap().a, b.a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn planar_mixed_volume_by_inclusion_exclusion(case in planar_case()) {
        check_planar_mixed_volume(case)?;
    }

    #[test]
    fn sturm_counts_known_roots(case in sturm_case()) {
        check_sturm(case)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn symbolic_determinant_matches_numeric(case in determinant_case()) {
        check_determinant(case)?;
    }
}

#[test]
fn lattice_equality_is_reflexive_under_hnf() {
    let a = IntegerMatrix::from_i64(&[&[2, 4, 6], &[1, 1, 1]]);
    let b = IntegerMatrix::from_i64(&[&[1, 1, 1], &[0, 2, 4]]);
    assert!(same_row_lattice(&a, &b));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, max_global_rejects: 20000, ..ProptestConfig::default() })]

    #[test]
    fn injective_systems_have_at_most_one_coset(
        c in prop::collection::vec(-3i64..=3, 3..=4),
        m in prop::collection::vec(0i64..=3, 8),
        kappas in prop::collection::vec(prop::collection::vec(1i64..=20, 4), 10),
    ) {
        use toricity_core::toricity::{coset_counting_system, count_positive_cosets, injectivity_test, CosetCount, CountOptions};
        let cols = c.len();
        let cm = to_rational(std::slice::from_ref(&c));
        prop_assume!(rank(&cm) == 1);
        let mm = to_integer(&[m[..cols].to_vec(), m[4..4 + cols].to_vec()]);
        let sys = VerticalSystem::new(cm, mm).unwrap();
        let inv = invariance_group(&sys, GroupMode::Positive);
        prop_assume!(inv.is_ok());
        let inv = inv.unwrap();
        prop_assume!(inv.d + 1 == 2);
        prop_assume!(injectivity_test(&sys, &inv).is_toric());
        for (seed, k) in kappas.iter().enumerate() {
            let kappa: Vec<Rational> = k[..cols].iter().map(|&v| ratio(v, 4)).collect();
            let Ok(h) = coset_counting_system(&sys, &inv, &kappa, seed as u64) else { continue };
            match count_positive_cosets(&h, &CountOptions::default()) {
                Ok(CosetCount::Exact(r)) => prop_assert!(r <= 1),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }
}
