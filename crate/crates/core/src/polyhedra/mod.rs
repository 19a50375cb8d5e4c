//! Exact polyhedral computations: positivity of kernels, extreme rays,
//! volumes, and mixed volumes.

pub mod dd;
pub mod lp;
pub mod volume;

pub use dd::{cone_extreme_rays, extreme_rays, ConeRays};
pub use lp::{maximize, nonnegative_row_vector_in, strictly_positive_kernel, LpOutcome, PositiveKernel};
pub use volume::{mixed_volume, polytope_volume, vertices, SupportSet, MIXED_VOLUME_LIMIT};

use crate::exactalg::IntegerMatrix;

/// Whether some strictly positive vector lies in the row space of `a`.
pub fn positive_row_space(a: &IntegerMatrix) -> bool {
    lp::positive_row_space(&a.to_rational())
}
