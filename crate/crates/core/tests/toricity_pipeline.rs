use toricity_core::exactalg::{rat, ratio, same_row_lattice, IntegerMatrix, Rational, RationalMatrix};
use toricity_core::polyring::{SignVerdict, SparsePolynomial};
use toricity_core::toricity::{
    analyze, coset_counting_system, count_positive_cosets, invariance_group, nondegeneracy_all_positive,
    AnalyzeOptions, BoundaryCondition, CosetCount, CountOptions, GroupMode, Injectivity, Verdict, VerticalSystem,
};

fn system(c: &[&[i64]], m: &[&[i64]]) -> VerticalSystem {
    VerticalSystem::new(RationalMatrix::from_i64(c), IntegerMatrix::from_i64(m)).unwrap()
}

fn idh() -> VerticalSystem {
    system(
        &[&[-1, 1, 1, 0, 0, 0], &[-1, 1, 0, 0, 0, 1], &[0, 0, 0, 1, -1, -1]],
        &[
            &[1, 0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 1, 1, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 1],
        ],
    )
}

/// Sum of `coef * prod(names)` over the given terms.
fn polynomial(vars: &[String], terms: &[(i64, &[&str])]) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(vars);
    for (coef, names) in terms {
        let mut t = SparsePolynomial::constant(vars, rat(*coef));
        for name in *names {
            t = &t * &SparsePolynomial::variable(vars, name).unwrap();
        }
        out = &out + &t;
    }
    out
}

#[test]
fn idh_is_toric_by_injectivity() {
    let sys = idh();
    let report = analyze(&sys, GroupMode::Positive, 7, &AnalyzeOptions::default());
    assert_eq!(report.verdict, Verdict::Toric);
    let inv = report.invariance.as_ref().unwrap();
    assert_eq!(inv.d, 2);
    assert!(same_row_lattice(
        &inv.a,
        &IntegerMatrix::from_i64(&[&[1, 0, 1, 0, 1], &[0, 1, 1, 0, 1]])
    ));
    assert!(nondegeneracy_all_positive(&sys).is_yes());

    let Some(Injectivity::Toric { det }) = &report.injectivity else {
        panic!("injectivity should certify toricity");
    };
    let vars = det.variables().to_vec();
    let expected = polynomial(
        &vars,
        &[
            (-1, &["alpha1", "alpha3", "alpha4", "mu1", "mu3", "mu4"]),
            (-1, &["alpha1", "alpha4", "alpha5", "mu1", "mu4", "mu6"]),
            (-1, &["alpha2", "alpha3", "alpha4", "mu1", "mu3", "mu4"]),
            (-1, &["alpha2", "alpha4", "alpha5", "mu1", "mu4", "mu6"]),
            (-1, &["alpha3", "alpha4", "alpha5", "mu2", "mu4", "mu6"]),
            (-1, &["alpha3", "alpha4", "alpha5", "mu3", "mu4", "mu6"]),
        ],
    );
    assert!(*det == expected || *det == -&expected, "det = {det}");
}

#[test]
fn second_fig_system_has_trivial_invariance() {
    let m: &[&[i64]] = &[
        &[6, 3, 0, 1, 0, 6, 3, 0, 1, 0],
        &[0, 2, 4, 0, 0, 0, 2, 4, 0, 0],
        &[0, 0, 0, 0, 5, 0, 0, 0, 0, 5],
    ];
    let sys = system(
        &[&[-1, 1, 1, -1, 1, 0, 0, 0, 0, 0], &[0, 0, 0, 0, 0, 1, -1, -1, 1, -1]],
        m,
    );
    let report = analyze(&sys, GroupMode::Positive, 0, &AnalyzeOptions::default());
    assert_eq!(report.d(), Some(0));
}

#[test]
fn infinitely_many_cosets_is_not_locally_toric() {
    let sys = system(&[&[-1, 1, 1]], &[&[2, 1, 0], &[0, 2, 2], &[1, 0, 1]]);
    let report = analyze(&sys, GroupMode::Positive, 0, &AnalyzeOptions::default());
    assert!(report.nondegeneracy.as_ref().unwrap().is_yes());
    assert_eq!(report.verdict, Verdict::NotLocallyToric);
}

#[test]
fn triangle_counts_one_coset() {
    let sys = system(&[&[1, -1, 1, -2]], &[&[3, 3, 0, 6], &[2, 2, 4, 0]]);
    let options = AnalyzeOptions {
        boundary: BoundaryCondition::Yes,
        kappa: Some(vec![rat(1); 4]),
        ..AnalyzeOptions::default()
    };
    let report = analyze(&sys, GroupMode::Positive, 3, &options);
    assert_eq!(report.mixed_volume, Some(6.into()));
    assert!(report.conditions.as_ref().unwrap().all_hold());
    assert_eq!(report.coset_count, Some(CosetCount::Exact(1)));
    assert_eq!(report.verdict, Verdict::Toric);
    assert!(report.zeros_for_all_parameters);
}

#[test]
fn square_network_count_varies_with_kappa() {
    let sys = system(&[&[-2, -1, 2, 1]], &[&[9, 3, 0, 6], &[0, 4, 6, 2]]);
    let inv = invariance_group(&sys, GroupMode::Positive).unwrap();
    let report = analyze(&sys, GroupMode::Positive, 0, &AnalyzeOptions::default());
    assert!(matches!(report.injectivity, Some(Injectivity::Inconclusive { .. })));
    assert_ne!(report.verdict, Verdict::Toric);
    let cases: [(Vec<Rational>, usize); 2] = [
        (vec![ratio(1, 100), rat(3), rat(1), rat(1)], 3),
        (vec![ratio(1, 100), rat(1), rat(1), rat(1)], 1),
    ];
    for (kappa, expected) in cases {
        for seed in 10..13 {
            let h = coset_counting_system(&sys, &inv, &kappa, seed).unwrap();
            let count = count_positive_cosets(&h, &CountOptions::default()).unwrap();
            assert_eq!(count, CosetCount::Exact(expected));
        }
    }
    let det = report.injectivity.as_ref().unwrap().determinant().unwrap();
    assert_eq!(det.sign_classify(), SignVerdict::MixedSigns);
}

#[test]
fn real_star_mode_reports_invariance_only() {
    let report = analyze(&idh(), GroupMode::RealStar, 0, &AnalyzeOptions::default());
    assert!(report.injectivity.is_none());
    assert!(!report.notices.is_empty());
    assert_eq!(report.d(), Some(2));
}
