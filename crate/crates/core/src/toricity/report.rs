use std::fmt;

use sha2::{Digest, Sha256};

use super::counting::CosetCount;
use super::invariance::{GroupMode, InvarianceResult, MatroidPartition};
use super::nondegeneracy::{AllPositiveNondegeneracy, AugmentedRank, Injectivity, Nondegeneracy};
use crate::exactalg::{Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetBound {
    /// Exactly this many cosets (for the sampled parameters, constant in κ).
    Count(usize),
    /// Constant number of cosets, at most the mixed volume when known.
    ConstantWithBound(Option<Integer>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    EmptyPositiveLocus,
    InvariantOnly,
    NotLocallyToric,
    GenericallyLocallyToric { bound: Option<Integer> },
    LocallyToric(CosetBound),
    GenericallyToric,
    Toric,
}

impl Verdict {
    /// Frozen identifier used in machine-readable reports.
    pub fn identifier(&self) -> &'static str {
        match self {
            Verdict::EmptyPositiveLocus => "empty_positive_locus",
            Verdict::InvariantOnly => "invariant_only",
            Verdict::NotLocallyToric => "not_locally_toric",
            Verdict::GenericallyLocallyToric { .. } => "generically_locally_toric",
            Verdict::LocallyToric(_) => "locally_toric",
            Verdict::GenericallyToric => "generically_toric",
            Verdict::Toric => "toric",
        }
    }

    /// Whether the zero set is a finite union of cosets for every positive κ.
    pub fn is_locally_toric_everywhere(&self) -> bool {
        matches!(self, Verdict::LocallyToric(_) | Verdict::Toric)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::EmptyPositiveLocus => write!(f, "no positive zeros for any parameter values"),
            Verdict::InvariantOnly => write!(f, "toric invariant; nondegeneracy not established"),
            Verdict::NotLocallyToric => write!(f, "not generically locally toric"),
            Verdict::GenericallyLocallyToric { bound: Some(b) } => {
                write!(f, "generically locally toric with generically at most {b} cosets")
            }
            Verdict::GenericallyLocallyToric { bound: None } => write!(f, "generically locally toric"),
            Verdict::LocallyToric(CosetBound::Count(r)) => write!(f, "locally toric with {r} cosets"),
            Verdict::LocallyToric(CosetBound::ConstantWithBound(Some(b))) => {
                write!(f, "locally toric with a constant number of cosets, at most {b}")
            }
            Verdict::LocallyToric(CosetBound::ConstantWithBound(None)) => {
                write!(f, "locally toric with a constant number of cosets")
            }
            Verdict::GenericallyToric => write!(f, "generically toric"),
            Verdict::Toric => write!(f, "toric"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NondegeneracyStatus {
    Yes,
    No,
    YesForAllPositive,
    Unknown,
}

impl NondegeneracyStatus {
    pub fn identifier(self) -> &'static str {
        match self {
            NondegeneracyStatus::Yes => "yes",
            NondegeneracyStatus::No => "no",
            NondegeneracyStatus::YesForAllPositive => "yes_for_all_positive",
            NondegeneracyStatus::Unknown => "unknown",
        }
    }
}

/// Absence of boundary zeros for positive parameters (asserted or certified).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Yes,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantCosetConditions {
    pub no_boundary_zeros: BoundaryCondition,
    pub augmented_rank: AugmentedRank,
    pub positive_row_space: bool,
}

impl ConstantCosetConditions {
    pub fn all_hold(&self) -> bool {
        self.no_boundary_zeros == BoundaryCondition::Yes && self.augmented_rank.is_yes() && self.positive_row_space
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub test: String,
    pub inputs_hash: String,
    pub outcome: String,
}

/// First 16 hex digits of the SHA-256 of the parts joined by `|`.
pub fn fingerprint(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            h.update(b"|");
        }
        h.update(p.as_bytes());
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricityReport {
    pub mode: GroupMode,
    pub seed: u64,
    pub s: usize,
    pub m: usize,
    pub n: usize,
    pub binomial: bool,
    pub partition: Option<MatroidPartition>,
    pub invariance: Option<InvarianceResult>,
    pub quasihomogeneity_agrees: Option<bool>,
    pub nondegeneracy: Option<Nondegeneracy>,
    pub all_positive: Option<AllPositiveNondegeneracy>,
    pub injectivity: Option<Injectivity>,
    pub mixed_volume: Option<Integer>,
    pub conditions: Option<ConstantCosetConditions>,
    pub coset_count: Option<CosetCount>,
    /// Parameter values at which the cosets were counted.
    pub count_kappa: Option<Vec<Rational>>,
    /// Every positive κ gives a nonempty positive zero set.
    pub zeros_for_all_parameters: bool,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    pub notices: Vec<String>,
}

impl ToricityReport {
    pub fn nondegeneracy_status(&self) -> NondegeneracyStatus {
        match (&self.nondegeneracy, &self.all_positive) {
            (_, Some(ap)) if ap.is_yes() => NondegeneracyStatus::YesForAllPositive,
            (Some(Nondegeneracy::Yes(_)), _) => NondegeneracyStatus::Yes,
            (Some(Nondegeneracy::No), _) => NondegeneracyStatus::No,
            _ => NondegeneracyStatus::Unknown,
        }
    }

    pub fn d(&self) -> Option<usize> {
        self.invariance.as_ref().map(|i| i.d)
    }

    pub fn has_evidence(&self, test: &str) -> bool {
        self.evidence.iter().any(|e| e.test == test)
    }
}
