use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{left_kernel, rank, row_basis, IntegerMatrix, RationalMatrix};
use crate::toricity::VerticalSystem;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reaction {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A mass-action reaction network. Complexes are stored once each as
/// coefficient vectors over the species.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionNetwork {
    species: Vec<String>,
    complexes: Vec<Vec<u32>>,
    reactions: Vec<Reaction>,
}

impl ReactionNetwork {
    /// Builds a network from `(source, target)` complex vectors, labelling
    /// reactions `k1, k2, ...` in order.
    pub fn from_reactions(species: Vec<String>, reactions: &[(Vec<u32>, Vec<u32>)]) -> Result<Self> {
        let mut net = Self {
            species,
            complexes: Vec::new(),
            reactions: Vec::new(),
        };
        for (i, (source, target)) in reactions.iter().enumerate() {
            if source.len() != net.species.len() || target.len() != net.species.len() {
                return Err(Error::DimensionMismatch(format!(
                    "reaction {} has complexes of the wrong length",
                    i + 1
                )));
            }
            if source == target {
                return Err(Error::Precondition(format!("reaction {} has equal source and target", i + 1)));
            }
            let s = net.complex_index(source);
            let t = net.complex_index(target);
            net.reactions.push(Reaction {
                source: s,
                target: t,
                label: format!("k{}", i + 1),
            });
        }
        Ok(net)
    }

    fn complex_index(&mut self, c: &[u32]) -> usize {
        if let Some(i) = self.complexes.iter().position(|x| x == c) {
            return i;
        }
        self.complexes.push(c.to_vec());
        self.complexes.len() - 1
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn complexes(&self) -> &[Vec<u32>] {
        &self.complexes
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn n(&self) -> usize {
        self.species.len()
    }

    pub fn m(&self) -> usize {
        self.reactions.len()
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    pub fn source(&self, j: usize) -> &[u32] {
        &self.complexes[self.reactions[j].source]
    }

    pub fn target(&self, j: usize) -> &[u32] {
        &self.complexes[self.reactions[j].target]
    }

    pub fn render_complex(&self, c: &[u32]) -> String {
        let terms: Vec<String> = c
            .iter()
            .zip(&self.species)
            .filter(|(k, _)| **k > 0)
            .map(|(k, s)| if *k == 1 { s.clone() } else { format!("{k}{s}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Stoichiometric matrix `N` and reactant matrix `M`.
    pub fn mass_action_matrices(&self) -> (IntegerMatrix, IntegerMatrix) {
        let n = IntegerMatrix::from_fn(self.n(), self.m(), |i, j| {
            (i64::from(self.target(j)[i]) - i64::from(self.source(j)[i])).into()
        });
        let m = IntegerMatrix::from_fn(self.n(), self.m(), |i, j| self.source(j)[i].into());
        (n, m)
    }

    pub fn stoichiometric_matrix(&self) -> IntegerMatrix {
        self.mass_action_matrices().0
    }

    /// The vertical system `C (κ ∘ x^M)` with `C` the RREF row basis of `N`.
    pub fn steady_state_system(&self) -> Result<VerticalSystem> {
        let (n, m) = self.mass_action_matrices();
        steady_state_from_matrices(&n, &m)?.with_variable_names(self.species.clone())
    }
}

/// Steady state system of `N (κ ∘ x^M)`.
pub fn steady_state_from_matrices(n: &IntegerMatrix, m: &IntegerMatrix) -> Result<VerticalSystem> {
    if n.is_zero() {
        return Err(Error::ZeroDynamics);
    }
    if n.shape() != m.shape() {
        return Err(Error::DimensionMismatch(format!(
            "N is {}x{} but M is {}x{}",
            n.rows(),
            n.cols(),
            m.rows(),
            m.cols()
        )));
    }
    VerticalSystem::new(row_basis(&n.to_rational()), m.clone())
}

/// RREF basis of the left kernel of `N`; one row per conservation law.
pub fn conservation_laws(n: &IntegerMatrix) -> RationalMatrix {
    left_kernel(&n.to_rational())
}

pub fn stoichiometric_rank(n: &IntegerMatrix) -> usize {
    rank(&n.to_rational())
}

impl fmt::Display for ReactionNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, r) in self.reactions.iter().enumerate() {
            if j > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "{} -> {}",
                self.render_complex(&self.complexes[r.source]),
                self.render_complex(&self.complexes[r.target])
            )?;
        }
        Ok(())
    }
}
