//! Sparse multivariate polynomials, symbolic determinants, and Sturm sequences.

pub mod det;
pub mod poly;
pub mod sturm;

pub use det::{det_symbolic, PolyMatrix, DET_SIZE_LIMIT};
pub use poly::{sign_classify, Monomial, SignVerdict, SparsePolynomial};
pub use sturm::{count_roots_in_interval, sturm_positive_roots};
