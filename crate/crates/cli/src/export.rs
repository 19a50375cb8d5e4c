//! Exchange format for counting positive cosets with an external solver.
//!
//! ```text
//! # coset counting system
//! variables: x1, x2
//! polynomials:
//! <one polynomial of C (κ ∘ x^M) per line>
//! linear:
//! <one linear polynomial a_i · x - b_i per line>
//! ```
//!
//! Polynomials use the canonical rendering: terms in graded-lex order,
//! coefficients as integers or `p/q`, products written with `*`, powers with
//! `^`, for example `3*x1^2*x2 - 1/2*x2 + 4`. The positive zeros of the listed
//! equations are in bijection with the positive cosets of the zero set for
//! the given κ. The right-hand sides are `b = A p` for a seeded random
//! positive point `p`.

use toricity_core::exactalg::Rational;
use toricity_core::toricity::{coset_counting_system, invariance_group, GroupMode, VerticalSystem};

use crate::CliError;

pub fn export_system(sys: &VerticalSystem, kappa: &[Rational], seed: u64) -> Result<String, CliError> {
    if kappa.len() != sys.m() {
        return Err(CliError::Dimension(format!(
            "{} parameter values for {} parameters",
            kappa.len(),
            sys.m()
        )));
    }
    let inv = invariance_group(sys, GroupMode::Positive)?;
    let h = coset_counting_system(sys, &inv, kappa, seed)?;
    Ok(h.exchange_format())
}

#[cfg(test)]
mod tests {
    use super::*;
    use toricity_core::exactalg::{rat, IntegerMatrix, RationalMatrix};

    fn triangle() -> VerticalSystem {
        VerticalSystem::new(
            RationalMatrix::from_i64(&[&[1, -1, 1, -2]]),
            IntegerMatrix::from_i64(&[&[3, 3, 0, 6], &[2, 2, 4, 0]]),
        )
        .unwrap()
    }

    fn section(text: &str, header: &str) -> Vec<String> {
        text.lines()
            .skip_while(|l| *l != header)
            .skip(1)
            .take_while(|l| !l.ends_with(':'))
            .map(str::to_string)
            .collect()
    }

    #[test]
    fn triangle_has_one_polynomial_and_one_linear_equation() {
        let text = export_system(&triangle(), &vec![rat(1); 4], 0).unwrap();
        assert_eq!(section(&text, "polynomials:").len(), 1);
        let linear = section(&text, "linear:");
        assert_eq!(linear.len(), 1);
        assert!(linear[0].contains("2*x1 + 3*x2"), "{linear:?}");
    }

    #[test]
    fn square_system_has_no_linear_equations() {
        let sys = VerticalSystem::new(
            RationalMatrix::from_i64(&[&[1, -1, 0], &[0, 1, -1]]),
            IntegerMatrix::from_i64(&[&[1, 0, 2], &[0, 1, 1]]),
        )
        .unwrap();
        let text = export_system(&sys, &vec![rat(1); 3], 0).unwrap();
        assert_eq!(section(&text, "polynomials:").len(), 2);
        assert!(section(&text, "linear:").is_empty());
    }

    #[test]
    fn rejects_wrong_parameter_count() {
        assert!(matches!(export_system(&triangle(), &vec![rat(1); 3], 0), Err(CliError::Dimension(_))));
    }
}
