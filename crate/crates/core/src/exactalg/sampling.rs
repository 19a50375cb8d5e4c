use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{Integer, Rational, RationalMatrix};
use super::rref::kernel_circuit_basis;
use crate::error::{Error, Result};

/// Bound on the numerators of random coefficients.
pub const SAMPLE_BOUND: i64 = 1 << 16;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut SeededRng) -> Rational {
    Rational::from_integer(Integer::from(rng.random_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
}

/// Random integer in `[1, SAMPLE_BOUND]`.
pub fn random_positive(rng: &mut SeededRng) -> Rational {
    Rational::from_integer(Integer::from(rng.random_range(1..=SAMPLE_BOUND)))
}

pub fn random_vector(rng: &mut SeededRng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

pub fn random_kernel_vector(m: &RationalMatrix, seed: u64) -> Result<Vec<Rational>> {
    random_kernel_vector_with(m, &mut rng_from_seed(seed))
}

/// Random combination of a kernel basis; never the zero vector.
pub fn random_kernel_vector_with(m: &RationalMatrix, rng: &mut SeededRng) -> Result<Vec<Rational>> {
    let basis = kernel_circuit_basis(m);
    if basis.is_empty() {
        return Err(Error::TrivialKernel);
    }
    loop {
        let coeffs = random_vector(rng, basis.len());
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let mut w = vec![Rational::zero(); m.cols()];
        for (c, v) in coeffs.iter().zip(&basis.vectors) {
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi += c * vi;
            }
        }
        return Ok(w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_kernel() {
        let m = RationalMatrix::from_i64(&[&[1, 1]]);
        let w = random_kernel_vector(&m, 0).unwrap();
        assert!(!w[0].is_zero());
        assert_eq!(w[0], -w[1].clone());
    }

    #[test]
    fn trivial_kernel() {
        let m = RationalMatrix::identity(3);
        assert_eq!(random_kernel_vector(&m, 1), Err(Error::TrivialKernel));
    }

    #[test]
    fn deterministic_per_seed() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3, 4]]);
        assert_eq!(random_kernel_vector(&m, 7).unwrap(), random_kernel_vector(&m, 7).unwrap());
        assert_ne!(random_kernel_vector(&m, 7).unwrap(), random_kernel_vector(&m, 8).unwrap());
    }
}
