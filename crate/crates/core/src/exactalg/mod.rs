//! Exact linear algebra over the rationals and the integers.

pub mod lattice;
pub mod matrix;
pub mod rref;
pub mod sampling;

pub use lattice::{
    hermite_normal_form, integer_kernel_basis, lattice_contained, lattice_contains, primitive_integer_vector,
    same_row_lattice, saturate, smith_normal_form, LatticeMode,
};
pub use matrix::{parse_rational, rat, ratio, Integer, IntegerMatrix, Matrix, Rational, RationalMatrix};
pub use rref::{determinant, kernel_circuit_basis, kernel_matrix, left_kernel, rank, row_basis, rref, solve, CircuitBasis};
pub use sampling::{random_kernel_vector, random_kernel_vector_with, random_positive, random_vector, rng_from_seed, SeededRng};
