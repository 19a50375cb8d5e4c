//! Report rendering. JSON reports carry `"schema": 1`; verdict, nondegeneracy,
//! multistationarity and ACR strings are frozen identifiers. Reaction and
//! block indices are 1-based. Polynomials use the canonical rendering:
//! graded-lex term order, explicit `*` and `^`.

use std::fmt::Write;

use serde_json::{json, Value};
use toricity_core::crn::{AcrStatus, Multistationarity, NetworkReport, ReactionNetwork, Surjectivity};
use toricity_core::exactalg::{IntegerMatrix, Rational};
use toricity_core::toricity::{
    quasihomogeneity_weights, AugmentedRank, BoundaryCondition, CosetBound, CosetCount, Injectivity, ToricityReport,
    Verdict, VerticalSystem,
};

use crate::input::{integer_matrix_json, rational_matrix_json};

pub const SCHEMA: u64 = 1;

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn one_based(blocks: &[Vec<usize>]) -> Value {
    json!(blocks.iter().map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn injectivity_identifier(report: &ToricityReport) -> &'static str {
    match &report.injectivity {
        Some(Injectivity::Toric { .. }) => "toric",
        Some(Injectivity::Inconclusive { .. }) => "inconclusive",
        None => "not_run",
    }
}

/// Coset count or bound as a short string, if the verdict carries one.
pub fn cosets_summary(report: &ToricityReport) -> Option<String> {
    match (&report.verdict, &report.coset_count) {
        (Verdict::Toric, _) => Some("1".into()),
        (_, Some(CosetCount::Exact(r))) => Some(r.to_string()),
        (Verdict::LocallyToric(CosetBound::ConstantWithBound(Some(b))), _) => Some(format!("constant <= {b}")),
        (Verdict::LocallyToric(CosetBound::ConstantWithBound(None)), _) => Some("constant".into()),
        (Verdict::GenericallyLocallyToric { bound: Some(b) }, _) => Some(format!("generic <= {b}")),
        _ => None,
    }
}

fn verdict_json(v: &Verdict) -> Value {
    let mut out = json!({ "id": v.identifier(), "text": v.to_string() });
    let bound = match v {
        Verdict::GenericallyLocallyToric { bound } | Verdict::LocallyToric(CosetBound::ConstantWithBound(bound)) => {
            bound.as_ref().map(|b| b.to_string())
        }
        _ => None,
    };
    if let Some(b) = bound {
        out["bound"] = Value::String(b);
    }
    if let Verdict::LocallyToric(CosetBound::Count(r)) = v {
        out["cosets"] = json!(r);
    }
    out
}

fn boundary_id(b: BoundaryCondition) -> &'static str {
    match b {
        BoundaryCondition::Yes => "yes",
        BoundaryCondition::Unknown => "unknown",
    }
}

fn count_json(report: &ToricityReport) -> Value {
    let Some(count) = &report.coset_count else { return Value::Null };
    let mut out = match count {
        CosetCount::Exact(r) => json!({ "kind": "exact", "count": r }),
        CosetCount::Heuristic { count, starts } => json!({ "kind": "heuristic", "count": count, "starts": starts }),
        CosetCount::Exported(_) => json!({ "kind": "exported" }),
    };
    if let Some(k) = &report.count_kappa {
        out["kappa"] = rationals(k);
    }
    out
}

pub fn system_json(sys: &VerticalSystem, report: &ToricityReport) -> Value {
    let invariance = report.invariance.as_ref().map(|inv| {
        json!({
            "A": integer_matrix_json(&inv.a),
            "d": inv.d,
            "partition": one_based(&inv.partition.blocks),
            "quasihomogeneity_rank": quasihomogeneity_weights(sys).rows(),
            "quasihomogeneity_agrees": report.quasihomogeneity_agrees,
        })
    });
    let injectivity = report.injectivity.as_ref().map(|inj| match inj {
        Injectivity::Toric { det } => json!({ "outcome": "toric", "determinant": det.to_string() }),
        Injectivity::Inconclusive { reason, det } => json!({
            "outcome": "inconclusive",
            "reason": reason,
            "determinant": det.as_ref().map(ToString::to_string),
        }),
    });
    let conditions = report.conditions.as_ref().map(|c| {
        json!({
            "no_boundary_zeros": boundary_id(c.no_boundary_zeros),
            "augmented_rank": if c.augmented_rank.is_yes() { "yes" } else { "unknown" },
            "positive_row_space": c.positive_row_space,
            "all_hold": c.all_hold(),
        })
    });
    json!({
        "schema": SCHEMA,
        "mode": report.mode.name(),
        "seed": report.seed,
        "dimensions": { "n": report.n, "m": report.m, "s": report.s, "d": report.d() },
        "variables": sys.variables(),
        "binomial": report.binomial,
        "invariance": invariance,
        "nondegeneracy": report.nondegeneracy_status().identifier(),
        "injectivity": injectivity,
        "mixed_volume": report.mixed_volume.as_ref().map(ToString::to_string),
        "constant_coset_conditions": conditions,
        "coset_count": count_json(report),
        "zeros_for_all_parameters": report.zeros_for_all_parameters,
        "verdict": verdict_json(&report.verdict),
        "evidence": report.evidence.iter().map(|e| json!({
            "test": e.test, "inputs_hash": e.inputs_hash, "outcome": e.outcome,
        })).collect::<Vec<_>>(),
        "notices": report.notices,
    })
}

fn matrix_rows(m: &IntegerMatrix) -> String {
    (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn blocks_text(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn system_text(sys: &VerticalSystem, report: &ToricityReport, out: &mut String) {
    let _ = writeln!(out, "variables: {}", sys.variables().join(", "));
    let _ = writeln!(
        out,
        "n = {}, m = {}, s = {}, mode = {}, seed = {}",
        report.n,
        report.m,
        report.s,
        report.mode.name(),
        report.seed
    );
    if report.binomial {
        let _ = writeln!(out, "binomial: every row of C has two nonzero entries");
    }
    if let Some(inv) = &report.invariance {
        let _ = writeln!(out, "matroid partition: {}", blocks_text(&inv.partition.blocks));
        let _ = writeln!(out, "invariance: d = {}", inv.d);
        if inv.d > 0 {
            let _ = writeln!(out, "  A = {}", matrix_rows(&inv.a));
        }
        let _ = writeln!(
            out,
            "quasihomogeneity: rank {}{}",
            quasihomogeneity_weights(sys).rows(),
            if report.quasihomogeneity_agrees == Some(true) { ", agrees with invariance" } else { "" }
        );
    }
    let _ = writeln!(out, "nondegeneracy: {}", report.nondegeneracy_status().identifier());
    match &report.injectivity {
        Some(Injectivity::Toric { det }) => {
            let _ = writeln!(out, "injectivity: toric, determinant of one sign");
            let _ = writeln!(out, "  det = {det}");
        }
        Some(Injectivity::Inconclusive { reason, .. }) => {
            let _ = writeln!(out, "injectivity: inconclusive ({reason})");
        }
        None => {}
    }
    if let Some(mv) = &report.mixed_volume {
        let _ = writeln!(out, "mixed volume: {mv}");
    }
    if let Some(c) = &report.conditions {
        let _ = writeln!(
            out,
            "constant-coset conditions: no boundary zeros {}, augmented rank {}, positive row space {}",
            boundary_id(c.no_boundary_zeros),
            match c.augmented_rank {
                AugmentedRank::Yes { .. } => "yes",
                AugmentedRank::Unknown { .. } => "unknown",
            },
            if c.positive_row_space { "yes" } else { "no" }
        );
    }
    if let Some(count) = &report.coset_count {
        let kappa = report
            .count_kappa
            .as_ref()
            .map(|k| k.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .unwrap_or_default();
        let text = match count {
            CosetCount::Exact(r) => format!("{r} (exact)"),
            CosetCount::Heuristic { count, starts } => format!("{count} (heuristic, {starts} starts)"),
            CosetCount::Exported(_) => "exported".into(),
        };
        let _ = writeln!(out, "coset count at kappa = ({kappa}): {text}");
    }
    if report.zeros_for_all_parameters {
        let _ = writeln!(out, "positive zeros exist for every positive kappa");
    }
    for notice in &report.notices {
        let _ = writeln!(out, "notice: {notice}");
    }
}

pub fn analyze_json(sys: &VerticalSystem, report: &ToricityReport) -> Value {
    let mut v = system_json(sys, report);
    v["kind"] = json!("system");
    v
}

pub fn analyze_text(sys: &VerticalSystem, report: &ToricityReport) -> String {
    let mut out = String::new();
    system_text(sys, report, &mut out);
    let _ = writeln!(out, "verdict: {} ({})", report.verdict.identifier(), report.verdict);
    out
}

/// Which parts of a network report are shown.
#[derive(Debug, Clone, Copy)]
pub struct Sections {
    pub analyze: bool,
    pub structure: bool,
    pub multistationarity: bool,
    pub acr: bool,
}

pub fn multistationarity_name(m: &Multistationarity) -> &'static str {
    match m {
        Multistationarity::Multistationary { .. } => "Multistationary",
        Multistationarity::Monostationary { .. } => "Monostationary",
        Multistationarity::Inconclusive { .. } => "Inconclusive",
    }
}

fn reactions(net: &ReactionNetwork) -> Vec<String> {
    (0..net.m())
        .map(|j| format!("{} -> {}", net.render_complex(net.source(j)), net.render_complex(net.target(j))))
        .collect()
}

fn acr_names(net: &ReactionNetwork, report: &NetworkReport, status: AcrStatus) -> Vec<String> {
    report
        .acr
        .iter()
        .flatten()
        .filter(|(_, s)| *s == status)
        .map(|(i, _)| net.species()[*i].clone())
        .collect()
}

pub fn network_json(net: &ReactionNetwork, report: &NetworkReport, sections: Sections) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "kind": "network",
        "species": net.species(),
        "reactions": reactions(net),
        "verdict": verdict_json(&report.verdict),
        "verdict_source": if report.verdict_from_reduction { "reduced" } else { "direct" },
    });
    if sections.analyze {
        v["conservation_laws"] = rational_matrix_json(&report.conservation);
        v["direct"] = system_json(&report.system, &report.direct);
        v["reduction"] = match &report.reduced {
            None => Value::Null,
            Some(r) => {
                let reduced_sys = r.reduction.network.steady_state_system().ok();
                json!({
                    "intermediates": r.choice.intermediates.iter().map(|&i| net.species()[i].clone()).collect::<Vec<_>>(),
                    "B": integer_matrix_json(&r.reduction.b),
                    "surjectivity": match r.reduction.surjectivity {
                        Surjectivity::Yes => "yes",
                        Surjectivity::Conjectural => "conjectural",
                    },
                    "species": r.reduction.network.species(),
                    "reactions": reactions(&r.reduction.network),
                    "A_reduced": r.report.invariance.as_ref().map(|inv| integer_matrix_json(&inv.a)),
                    "A_lifted": r.lifted.as_ref().map(integer_matrix_json),
                    "report": reduced_sys.map(|s| system_json(&s, &r.report)),
                })
            }
        };
    }
    if sections.structure {
        v["structure"] = match &report.structure {
            None => Value::Null,
            Some(st) => json!({
                "complexes": st.complexes,
                "linkage_classes": st.linkage_count(),
                "rank": st.rank,
                "deficiency": st.deficiency,
                "weakly_reversible": st.weakly_reversible,
                "deficiency_zero_certificate": st.deficiency_zero_certificate(),
                "partition_refines_linkage": report.partition_refines_linkage,
            }),
        };
    }
    if sections.multistationarity {
        v["multistationarity"] = match &report.multistationarity {
            None => Value::Null,
            Some(m) => {
                let mut out = json!({
                    "outcome": m.identifier(),
                    "determinant": m.determinant().map(ToString::to_string),
                });
                if let Multistationarity::Inconclusive { reason, .. } = m {
                    out["reason"] = json!(reason);
                }
                out
            }
        };
    }
    if sections.acr {
        v["acr"] = match &report.acr {
            None => Value::Null,
            Some(_) => json!({
                "acr": acr_names(net, report, AcrStatus::Acr),
                "local_acr": acr_names(net, report, AcrStatus::LocalAcr),
                "no_acr": acr_names(net, report, AcrStatus::NoAcr),
            }),
        };
    }
    v
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

pub fn network_text(net: &ReactionNetwork, report: &NetworkReport, sections: Sections) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "network: {} species, {} reactions", net.n(), net.m());
    for r in reactions(net) {
        let _ = writeln!(out, "  {r}");
    }
    if sections.structure {
        if let Some(st) = &report.structure {
            let _ = writeln!(
                out,
                "structure: {} complexes, {} linkage classes, rank {}, deficiency {}, {}",
                st.complexes,
                st.linkage_count(),
                st.rank,
                st.deficiency,
                if st.weakly_reversible { "weakly reversible" } else { "not weakly reversible" }
            );
            if let Some(refines) = report.partition_refines_linkage {
                let _ = writeln!(
                    out,
                    "  matroid partition {} the linkage classes",
                    if refines { "refines" } else { "does not refine" }
                );
            }
        }
    }
    if sections.analyze {
        let mut direct = String::new();
        system_text(&report.system, &report.direct, &mut direct);
        let _ = writeln!(out, "direct analysis:");
        out.push_str(&indent(&direct));
        let _ = writeln!(out, "  verdict: {}", report.direct.verdict.identifier());
        if let Some(r) = &report.reduced {
            let names: Vec<&str> = r.choice.intermediates.iter().map(|&i| net.species()[i].as_str()).collect();
            let _ = writeln!(
                out,
                "reduction: intermediates {}, surjectivity {}",
                names.join(", "),
                match r.reduction.surjectivity {
                    Surjectivity::Yes => "yes",
                    Surjectivity::Conjectural => "conjectural",
                }
            );
            for rx in reactions(&r.reduction.network) {
                let _ = writeln!(out, "  {rx}");
            }
            if let Ok(rsys) = r.reduction.network.steady_state_system() {
                let mut reduced = String::new();
                system_text(&rsys, &r.report, &mut reduced);
                out.push_str(&indent(&reduced));
            }
            let _ = writeln!(out, "  verdict: {}", r.report.verdict.identifier());
            if let Some(lifted) = &r.lifted {
                let _ = writeln!(out, "  lifted A = {}", matrix_rows(lifted));
            }
        }
    }
    let _ = writeln!(
        out,
        "verdict: {} ({}){}",
        report.verdict.identifier(),
        report.verdict,
        if report.verdict_from_reduction { ", from the reduced network" } else { "" }
    );
    if sections.multistationarity {
        if let Some(m) = &report.multistationarity {
            let _ = write!(out, "multistationarity: {}", multistationarity_name(m));
            if let Multistationarity::Inconclusive { reason, .. } = m {
                let _ = write!(out, " ({reason})");
            }
            let _ = writeln!(out);
        }
    }
    if sections.acr && report.acr.is_some() {
        let acr = acr_names(net, report, AcrStatus::Acr);
        let local = acr_names(net, report, AcrStatus::LocalAcr);
        let _ = writeln!(out, "ACR: {}", if acr.is_empty() { "none".into() } else { acr.join(", ") });
        if !local.is_empty() {
            let _ = writeln!(out, "local ACR: {}", local.join(", "));
        }
    }
    out
}
