//! Reaction-network frontend: parsing, mass-action matrices, intermediates,
//! structure, multistationarity, and concentration robustness.

pub mod intermediates;
pub mod multistationarity;
pub mod network;
pub mod parse;
pub mod siphons;
pub mod structure;

pub use intermediates::{
    find_intermediates, intermediate_choice, lift_invariance, reduce_network, IntermediateChoice, Reduction,
    Surjectivity,
};
pub use multistationarity::{acr_detect, gamma_matrix, multistationarity_test, AcrStatus, Multistationarity};
pub use network::{conservation_laws, steady_state_from_matrices, Reaction, ReactionNetwork};
pub use parse::parse_network;
pub use siphons::{minimal_siphons, siphon_boundary_check, SIPHON_STATE_LIMIT};
pub use structure::{network_structure, NetworkStructure};

use crate::error::Result;
use crate::exactalg::{IntegerMatrix, RationalMatrix};
use crate::toricity::{
    analyze, invariance_group, AnalyzeOptions, BoundaryCondition, CosetBound, GroupMode, InvarianceResult,
    ToricityReport, Verdict, VerticalSystem,
};

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkOptions {
    pub reduce: bool,
    pub structure: bool,
    pub multistationarity: bool,
    pub acr: bool,
    /// A `boundary` of `Yes` is taken as a user assertion; otherwise the
    /// siphon check decides.
    pub analyze: AnalyzeOptions,
}

impl Default for NetworkOptions {
    fn default() -> Self {
        Self {
            reduce: true,
            structure: true,
            multistationarity: true,
            acr: true,
            analyze: AnalyzeOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedAnalysis {
    pub choice: IntermediateChoice,
    pub reduction: Reduction,
    pub report: ToricityReport,
    /// `[Ã | Ã B]` with columns in the original species order.
    pub lifted: Option<IntegerMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkReport {
    pub system: VerticalSystem,
    pub conservation: RationalMatrix,
    pub structure: Option<NetworkStructure>,
    /// Whether the matroid partition refines the linkage classes.
    pub partition_refines_linkage: Option<bool>,
    pub direct: ToricityReport,
    pub reduced: Option<ReducedAnalysis>,
    pub verdict: Verdict,
    pub verdict_from_reduction: bool,
    pub multistationarity: Option<Multistationarity>,
    pub acr: Option<Vec<(usize, AcrStatus)>>,
}

impl NetworkReport {
    pub fn invariance(&self) -> Option<&InvarianceResult> {
        self.direct.invariance.as_ref()
    }

    pub fn acr_species(&self) -> Vec<usize> {
        self.acr
            .iter()
            .flatten()
            .filter(|(_, s)| *s == AcrStatus::Acr)
            .map(|(i, _)| *i)
            .collect()
    }
}

fn strength(v: &Verdict) -> u8 {
    match v {
        Verdict::Toric => 6,
        Verdict::LocallyToric(CosetBound::Count(_)) => 5,
        Verdict::LocallyToric(_) => 4,
        Verdict::GenericallyToric => 3,
        Verdict::GenericallyLocallyToric { .. } => 2,
        _ => 0,
    }
}

fn analyze_with_siphons(
    net: &ReactionNetwork,
    sys: &VerticalSystem,
    mode: GroupMode,
    seed: u64,
    options: &AnalyzeOptions,
) -> ToricityReport {
    let mut opts = options.clone();
    if opts.boundary != BoundaryCondition::Yes && mode == GroupMode::Positive {
        if let Ok(inv) = invariance_group(sys, mode) {
            opts.boundary = siphon_boundary_check(net, &inv.a);
        }
    }
    analyze(sys, mode, seed, &opts)
}

/// Steady-state analysis of a network. With reduction enabled, the reduced
/// network is analyzed as well and a stronger toricity verdict carries over
/// to the original network.
pub fn analyze_network(net: &ReactionNetwork, mode: GroupMode, seed: u64, options: &NetworkOptions) -> Result<NetworkReport> {
    let sys = net.steady_state_system()?;
    let conservation = conservation_laws(&net.stoichiometric_matrix());
    let direct = analyze_with_siphons(net, &sys, mode, seed, &options.analyze);

    let mut reduced = None;
    if options.reduce {
        let choice = find_intermediates(net);
        if !choice.is_empty() {
            let reduction = reduce_network(net, &choice)?;
            let rsys = reduction.network.steady_state_system()?;
            let report = analyze_with_siphons(&reduction.network, &rsys, mode, seed, &options.analyze);
            let lifted = match &report.invariance {
                Some(inv) => Some(choice.to_species_order(&lift_invariance(&inv.a, &reduction.b)?)),
                None => None,
            };
            reduced = Some(ReducedAnalysis {
                choice,
                reduction,
                report,
                lifted,
            });
        }
    }

    let mut verdict = direct.verdict.clone();
    let mut verdict_from_reduction = false;
    if let Some(r) = &reduced {
        if strength(&r.report.verdict) > strength(&verdict) {
            verdict = r.report.verdict.clone();
            verdict_from_reduction = true;
        }
    }

    let (structure, partition_refines_linkage) = if options.structure {
        let st = network_structure(net);
        let refines = direct.partition.as_ref().map(|p| st.refined_by(p));
        (Some(st), refines)
    } else {
        (None, None)
    };

    let inv = direct.invariance.clone();
    let multistationarity = match (&inv, options.multistationarity) {
        (Some(inv), true) => Some(multistationarity_test(&sys, inv, &conservation, verdict == Verdict::Toric)),
        _ => None,
    };
    let acr = match (&inv, options.acr) {
        (Some(inv), true) => Some(acr_detect(inv, verdict.is_locally_toric_everywhere(), verdict == Verdict::Toric)),
        _ => None,
    };

    Ok(NetworkReport {
        system: sys,
        conservation,
        structure,
        partition_refines_linkage,
        direct,
        reduced,
        verdict,
        verdict_from_reduction,
        multistationarity,
        acr,
    })
}
