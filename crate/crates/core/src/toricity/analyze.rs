use num::{One, Signed};
use rand::Rng;

use super::counting::{coset_counting_system, coset_mixed_volume, count_positive_cosets, CosetCount, CountOptions};
use super::invariance::{
    invariance_agrees_with_quasihomogeneity, invariance_group, positive_locus_nonempty, GroupMode, InvarianceResult,
};
use super::nondegeneracy::{
    augmented_rank_all_positive, injectivity_test, nondegeneracy, nondegeneracy_all_positive, AllPositiveNondegeneracy,
    AugmentedRank, Injectivity, Nondegeneracy,
};
use super::report::{
    fingerprint, BoundaryCondition, ConstantCosetConditions, CosetBound, Evidence, ToricityReport, Verdict,
};
use super::system::{binomial_quickcheck, VerticalSystem};
use crate::error::{Error, Result};
use crate::exactalg::{rng_from_seed, Integer, Rational};
use crate::polyhedra::{positive_row_space, MIXED_VOLUME_LIMIT};

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    /// Whether positive parameters exclude zeros on the boundary of the slice.
    pub boundary: BoundaryCondition,
    /// Parameter values for coset counting; random positive values otherwise.
    pub kappa: Option<Vec<Rational>>,
    pub count: CountOptions,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            boundary: BoundaryCondition::Unknown,
            kappa: None,
            count: CountOptions::default(),
        }
    }
}

/// Records the three sufficient conditions for a coset count that does not
/// depend on κ.
pub fn constant_coset_conditions(
    sys: &VerticalSystem,
    inv: &InvarianceResult,
    boundary: BoundaryCondition,
) -> Result<ConstantCosetConditions> {
    if !sys.exponents().is_nonnegative() {
        return Err(Error::Precondition("M must be nonnegative".into()));
    }
    if sys.s() + inv.d != sys.n() {
        return Err(Error::Precondition("requires d = n - s".into()));
    }
    Ok(ConstantCosetConditions {
        no_boundary_zeros: boundary,
        augmented_rank: augmented_rank_all_positive(sys, inv),
        positive_row_space: positive_row_space(&inv.a),
    })
}

struct Trail<'a> {
    report: &'a mut ToricityReport,
    base: String,
}

impl Trail<'_> {
    fn record(&mut self, test: &str, extra: &str, outcome: impl Into<String>) {
        self.report.evidence.push(Evidence {
            test: test.to_string(),
            inputs_hash: fingerprint(&[&self.base, test, extra]),
            outcome: outcome.into(),
        });
    }
}

fn random_kappa(m: usize, seed: u64) -> Vec<Rational> {
    let mut rng = rng_from_seed(seed ^ 0x006b_6170_7061);
    (0..m)
        .map(|_| Rational::new(Integer::from(rng.random_range(1..=64i64)), Integer::from(16)))
        .collect()
}

fn nondegeneracy_outcome(nd: &Nondegeneracy) -> String {
    match nd {
        Nondegeneracy::Yes(w) => format!(
            "yes, w = ({})",
            w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
        Nondegeneracy::No => "no".into(),
        Nondegeneracy::Undetermined => "undetermined".into(),
    }
}

/// Decision procedure over the chosen group: invariance, nondegeneracy,
/// dimension test, injectivity, mixed volume, all-positive nondegeneracy,
/// constant-coset conditions, and coset counting, stopping at the first
/// conclusive step.
pub fn analyze(sys: &VerticalSystem, mode: GroupMode, seed: u64, options: &AnalyzeOptions) -> ToricityReport {
    let mut report = ToricityReport {
        mode,
        seed,
        s: sys.s(),
        m: sys.m(),
        n: sys.n(),
        binomial: false,
        partition: None,
        invariance: None,
        quasihomogeneity_agrees: None,
        nondegeneracy: None,
        all_positive: None,
        injectivity: None,
        mixed_volume: None,
        conditions: None,
        coset_count: None,
        count_kappa: None,
        zeros_for_all_parameters: false,
        verdict: Verdict::InvariantOnly,
        evidence: Vec::new(),
        notices: Vec::new(),
    };
    let base = format!("{}|{}|{}", sys.c(), sys.exponents(), mode.name());
    let verdict = run(sys, mode, seed, options, &mut Trail { report: &mut report, base });
    report.verdict = verdict;
    report
}

fn run(sys: &VerticalSystem, mode: GroupMode, seed: u64, options: &AnalyzeOptions, t: &mut Trail) -> Verdict {
    let (s, n) = (sys.s(), sys.n());

    t.report.binomial = binomial_quickcheck(sys);
    t.record("binomial_quickcheck", "", if t.report.binomial { "binomial" } else { "not binomial" });

    if !positive_locus_nonempty(sys, mode) {
        t.record("positive_locus", "", "empty");
        return Verdict::EmptyPositiveLocus;
    }
    t.record("positive_locus", "", "nonempty");

    let inv = match invariance_group(sys, mode) {
        Ok(inv) => inv,
        Err(e) => {
            t.record("invariance", "", format!("error: {e}"));
            return Verdict::EmptyPositiveLocus;
        }
    };
    let a_text = inv.a.to_string();
    t.record(
        "matroid_partition",
        "",
        format!("{} blocks: {:?}", inv.partition.len(), inv.partition.blocks),
    );
    t.record("invariance", "", format!("d = {}, A = {a_text}", inv.d));
    let agrees = invariance_agrees_with_quasihomogeneity(sys, &inv);
    t.record(
        "quasihomogeneity",
        &a_text,
        if agrees { "agrees with invariance" } else { "strictly smaller than invariance" },
    );
    t.report.quasihomogeneity_agrees = Some(agrees);
    t.report.partition = Some(inv.partition.clone());
    t.report.invariance = Some(inv.clone());
    let d = inv.d;

    let nd = nondegeneracy(sys, seed);
    t.record("nondegeneracy", &seed.to_string(), nondegeneracy_outcome(&nd));
    let nondegenerate = nd.is_yes();
    t.report.nondegeneracy = Some(nd);
    if !nondegenerate {
        return Verdict::InvariantOnly;
    }

    if s + d < n {
        t.record("dimension", &a_text, format!("s + d = {} < n = {n}", s + d));
        return Verdict::NotLocallyToric;
    }
    if s + d > n {
        t.record("dimension", &a_text, format!("inconsistent: s + d = {} > n = {n}", s + d));
        t.report
            .notices
            .push("nondegenerate system with s + d > n; this contradicts the dimension bound".into());
        return Verdict::InvariantOnly;
    }
    t.record("dimension", &a_text, format!("s + d = n = {n}"));

    if mode != GroupMode::Positive {
        t.report.notices.push(format!(
            "group mode {}: injectivity, mixed volume, and coset counting apply to positive zeros only and were skipped",
            mode.name()
        ));
        return Verdict::GenericallyLocallyToric { bound: None };
    }

    let ap = nondegeneracy_all_positive(sys);
    match &ap {
        AllPositiveNondegeneracy::Yes { columns, minor, .. } => t.record(
            "nondegeneracy_all_positive",
            "",
            format!("yes, minor on columns {columns:?}: {minor}"),
        ),
        AllPositiveNondegeneracy::Unknown => t.record("nondegeneracy_all_positive", "", "unknown"),
    }
    let all_positive = ap.is_yes();
    t.report.all_positive = Some(ap);

    let inj = injectivity_test(sys, &inv);
    match &inj {
        Injectivity::Toric { det } => t.record("injectivity", &a_text, format!("sign-definite determinant {det}")),
        Injectivity::Inconclusive { reason, .. } => t.record("injectivity", &a_text, format!("inconclusive: {reason}")),
    }
    let toric = inj.is_toric();
    t.report.injectivity = Some(inj);
    if toric {
        return Verdict::Toric;
    }

    let mv = if n <= MIXED_VOLUME_LIMIT {
        match coset_mixed_volume(sys, &inv) {
            Ok(mv) => {
                t.record("mixed_volume", &a_text, mv.to_string());
                Some(mv)
            }
            Err(e) => {
                t.record("mixed_volume", &a_text, format!("error: {e}"));
                None
            }
        }
    } else {
        t.record(
            "mixed_volume",
            &a_text,
            format!("skipped: n = {n} exceeds the limit {MIXED_VOLUME_LIMIT}"),
        );
        None
    };
    t.report.mixed_volume = mv.clone();
    let mv_is_one = mv.as_ref().is_some_and(|v| v.is_one());

    if !all_positive {
        return if mv_is_one {
            Verdict::GenericallyToric
        } else {
            Verdict::GenericallyLocallyToric { bound: mv }
        };
    }
    if mv_is_one {
        return Verdict::Toric;
    }

    let conditions = match constant_coset_conditions(sys, &inv, options.boundary) {
        Ok(c) => c,
        Err(e) => {
            t.record("constant_coset_conditions", &a_text, format!("not applicable: {e}"));
            return Verdict::LocallyToric(CosetBound::ConstantWithBound(mv));
        }
    };
    t.record(
        "constant_coset_conditions",
        &a_text,
        format!(
            "(i) {}, (ii) {}, (iii) {}",
            match conditions.no_boundary_zeros {
                BoundaryCondition::Yes => "yes",
                BoundaryCondition::Unknown => "unknown",
            },
            match &conditions.augmented_rank {
                AugmentedRank::Yes { .. } => "yes",
                AugmentedRank::Unknown { .. } => "unknown",
            },
            if conditions.positive_row_space { "yes" } else { "no" }
        ),
    );
    let can_count = conditions.positive_row_space && conditions.no_boundary_zeros == BoundaryCondition::Yes;
    t.report.zeros_for_all_parameters = conditions.all_hold();
    t.report.conditions = Some(conditions);
    if !can_count {
        return Verdict::LocallyToric(CosetBound::ConstantWithBound(mv));
    }

    let kappa = options.kappa.clone().unwrap_or_else(|| random_kappa(sys.m(), seed));
    if kappa.len() != sys.m() || kappa.iter().any(|k| !k.is_positive()) {
        t.record("coset_count", "", "skipped: invalid parameter values");
        return Verdict::LocallyToric(CosetBound::ConstantWithBound(mv));
    }
    let kappa_text = kappa.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    t.report.count_kappa = Some(kappa.clone());
    let count = coset_counting_system(sys, &inv, &kappa, seed).and_then(|h| {
        let mut opts = options.count.clone();
        opts.seed = seed;
        count_positive_cosets(&h, &opts)
    });
    match count {
        Ok(CosetCount::Exact(r)) => {
            t.record("coset_count", &kappa_text, format!("exact: {r}"));
            t.report.coset_count = Some(CosetCount::Exact(r));
            if r == 1 {
                Verdict::Toric
            } else {
                Verdict::LocallyToric(CosetBound::Count(r))
            }
        }
        Ok(other) => {
            let text = match &other {
                CosetCount::Heuristic { count, starts } => format!("heuristic: {count} from {starts} starts"),
                CosetCount::Exported(_) => "exported for an external solver".into(),
                CosetCount::Exact(_) => unreachable!(),
            };
            t.record("coset_count", &kappa_text, text);
            t.report.coset_count = Some(other);
            Verdict::LocallyToric(CosetBound::ConstantWithBound(mv))
        }
        Err(e) => {
            t.record("coset_count", &kappa_text, format!("error: {e}"));
            Verdict::LocallyToric(CosetBound::ConstantWithBound(mv))
        }
    }
}
