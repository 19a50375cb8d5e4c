//! Toric invariance, local toricity, and coset counting for vertically
//! parametrized systems `C (κ ∘ x^M)`.

pub mod analyze;
pub mod counting;
pub mod invariance;
pub mod newton;
pub mod nondegeneracy;
pub mod report;
pub mod system;

pub use analyze::{analyze, constant_coset_conditions, AnalyzeOptions};
pub use counting::{
    coset_counting_system, coset_counting_system_at, coset_mixed_volume, coset_supports, count_positive_cosets,
    univariate_slice, CosetCount, CosetCountingSystem, CountOptions, UnivariateSlice,
};
pub use invariance::{
    cayley_matrix, invariance_agrees_with_quasihomogeneity, invariance_group, matroid_partition,
    positive_locus_nonempty, quasihomogeneity_weights, GroupMode, InvarianceResult, MatroidPartition,
};
pub use newton::{multistart_newton, NewtonOptions, NewtonSummary};
pub use nondegeneracy::{
    augmented_rank_all_positive, injectivity_matrix, injectivity_test, injectivity_variables, local_toricity,
    nondegeneracy, nondegeneracy_all_positive, AllPositiveNondegeneracy, AugmentedRank, Injectivity, LocalToricity,
    Nondegeneracy,
};
pub use report::{
    fingerprint, BoundaryCondition, ConstantCosetConditions, CosetBound, Evidence, NondegeneracyStatus,
    ToricityReport, Verdict,
};
pub use system::{binomial_quickcheck, build_free_system, build_free_system_from_supports, Coefficient, VerticalSystem};
