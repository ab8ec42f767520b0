//! Per-graph analysis: every invariant, every proved bound as a hard
//! assertion, and the conjecture verdict.

use crate::canon::canonical_form;
use crate::coloring::{chromatic_index, is_proper, palette, EdgeColoring};
use crate::degree::{
    check_matching_condition, is_degree_coloring, tau, tau_regular_shortcut, TAU_MAX_VERTICES,
};
use crate::error::{AssertionFailure, GraphError, ScanError};
use crate::harness::record::{ConjectureStatus, Counterexample, CounterexampleKind, GraphRecord, PipelineRecord};
use crate::invariants::{density, omega_star};
use crate::multigraph::Multigraph;
use crate::palette::PaletteAssignment;
use crate::regularize::{regularize, verify_regularization};
use crate::search::{Bound, Budget, SearchOutcome};

pub(crate) fn fail(g: &Multigraph, property: &str, detail: String) -> ScanError {
    ScanError::Assertion(AssertionFailure {
        property: property.to_string(),
        detail,
        graph: g.to_text(),
    })
}

fn ensure(g: &Multigraph, ok: bool, property: &str, detail: impl FnOnce() -> String) -> Result<(), ScanError> {
    if ok {
        Ok(())
    } else {
        Err(fail(g, property, detail()))
    }
}

/// Computes R(G), τ(R(G)) by the regular-graph shortcut and, when R is
/// small enough, by direct search, and compares with τ(G).
pub fn theorem_pipeline(g: &Multigraph, budget_secs: u64) -> Result<PipelineRecord, GraphError> {
    let tau_g = tau(g, Budget::seconds(budget_secs))?.bound();
    pipeline_with_tau(g, tau_g, budget_secs)
}

fn pipeline_with_tau(g: &Multigraph, tau_g: Bound, budget_secs: u64) -> Result<PipelineRecord, GraphError> {
    let res = regularize(g)?;
    let r = &res.graph;
    let tau_r_shortcut = tau_regular_shortcut(r)?.map(|(value, _)| value);
    let tau_r_search = if r.n() <= TAU_MAX_VERTICES {
        Some(tau(r, Budget::seconds(budget_secs))?.bound())
    } else {
        None
    };
    let tau_r = tau_r_search.and_then(Bound::exact).or(tau_r_shortcut);
    let tau_g_le_tau_r = match (tau_g, tau_r) {
        (Bound::Exact(t), Some(tr)) => Some(t <= tr),
        (Bound::Undecided { lower, .. }, Some(tr)) if lower > tr => Some(false),
        _ => None,
    };
    Ok(PipelineRecord {
        rho: res.rho,
        identity: res.is_identity(),
        r_vertices: r.n(),
        r_edges: r.edge_count(),
        omega_r: density(r)?.value,
        tau_r_shortcut,
        tau_r_search,
        tau_g,
        tau_g_le_tau_r,
    })
}

pub(crate) struct Analysis {
    pub record: GraphRecord,
    pub counterexample: Option<Counterexample>,
    pub tau_witness: Option<PaletteAssignment>,
}

fn bound_of<W>(outcome: &SearchOutcome<W>) -> (Bound, bool) {
    match outcome {
        SearchOutcome::Exact {
            value,
            optimality_certified,
            ..
        } => (Bound::Exact(*value), *optimality_certified),
        SearchOutcome::Undecided { lower, upper, .. } => (
            Bound::Undecided {
                lower: *lower,
                upper: *upper,
            },
            false,
        ),
    }
}

/// Runs every computation on `g` and checks every proved statement.
pub(crate) fn analyze_graph(g: &Multigraph, budget_secs: u64) -> Result<Analysis, ScanError> {
    let key = canonical_form(g)?;
    let delta = g.max_degree();
    let p = g.max_multiplicity();
    let vizing = delta + p as usize;
    let omega = density(g)?.value;
    let rho = delta.max(omega);
    let omega_star = omega_star(g)?.value;

    let chi = chromatic_index(g, Budget::seconds(budget_secs))?;
    let (chi_prime, chi_prime_certified) = bound_of(&chi);
    let mut chi_palette_sound = false;
    let mut chi_witness: Option<&EdgeColoring> = None;
    if let SearchOutcome::Exact { value, witness, .. } = &chi {
        ensure(g, is_proper(g, witness)?, "chi' witness is proper", || {
            witness.to_text()
        })?;
        ensure(g, witness.distinct_colors() <= *value, "chi' witness color count", || {
            format!("{} colors used, chi' = {value}", witness.distinct_colors())
        })?;
        let mu = palette(g, witness)?;
        chi_palette_sound =
            is_degree_coloring(g, &mu)? && check_matching_condition(g, &mu)?.is_empty();
        ensure(g, chi_palette_sound, "edge-coloring palette satisfies degree, cover and matching conditions", || {
            mu.to_text()
        })?;
        chi_witness = Some(witness);
    }

    let tau_outcome = tau(g, Budget::seconds(budget_secs))?;
    let (tau_bound, tau_certified) = bound_of(&tau_outcome);
    let tau_witness = tau_outcome.witness().cloned();
    if let (Some(value), Some(mu)) = (tau_outcome.value(), &tau_witness) {
        ensure(
            g,
            mu.colors_count() == value && is_degree_coloring(g, mu)?,
            "tau witness is a degree-coloring with tau colors",
            || mu.to_text(),
        )?;
    }

    // Proved bounds.
    ensure(g, omega <= omega_star, "omega <= omega*", || format!("omega = {omega}, omega* = {omega_star}"))?;
    ensure(g, omega_star == rho, "omega* = max(delta, omega)", || {
        format!("omega* = {omega_star}, delta = {delta}, omega = {omega}")
    })?;
    ensure(g, chi_prime.lower() <= chi_prime.upper(), "chi' bounds ordered", || format!("{chi_prime:?}"))?;
    ensure(g, tau_bound.lower() <= tau_bound.upper(), "tau bounds ordered", || format!("{tau_bound:?}"))?;
    ensure(g, omega_star <= chi_prime.upper(), "omega* <= chi'", || {
        format!("omega* = {omega_star}, chi' = {chi_prime:?}")
    })?;
    ensure(g, chi_prime.lower() <= vizing, "chi' <= delta + p", || {
        format!("chi' = {chi_prime:?}, delta + p = {vizing}")
    })?;
    ensure(g, rho <= tau_bound.upper(), "max(delta, omega) <= tau", || {
        format!("rho = {rho}, tau = {tau_bound:?}")
    })?;
    ensure(g, tau_bound.lower() <= chi_prime.upper(), "tau <= chi'", || {
        format!("tau = {tau_bound:?}, chi' = {chi_prime:?}")
    })?;
    if p <= 1 {
        if let Bound::Exact(c) = chi_prime {
            ensure(g, c <= delta + 1, "simple graph: chi' <= delta + 1", || format!("chi' = {c}"))?;
        }
    }

    // Regular graphs with ω ≤ Δ: τ = Δ via the all-colors assignment.
    if let Some((value, mu)) = tau_regular_shortcut(g)? {
        ensure(g, is_degree_coloring(g, &mu)?, "regular shortcut assignment is a degree-coloring", || {
            mu.to_text()
        })?;
        if let Bound::Exact(t) = tau_bound {
            ensure(g, t == value, "regular graph with omega <= delta has tau = delta", || {
                format!("tau = {t}, delta = {value}")
            })?;
        }
    }

    // R(G): structural properties, and τ(R) = ρ.
    let res = regularize(g)?;
    let report = verify_regularization(g, &res)?;
    ensure(g, report.passed(), "regularization properties", || {
        report
            .failures
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    })?;
    if res.is_identity() {
        ensure(g, res.graph == *g, "R(G) = G on the fixed-point class", String::new)?;
    } else {
        let extra: usize = g.degrees().iter().map(|d| rho - d).sum();
        ensure(
            g,
            res.graph.n() == 2 * g.n() && res.graph.edge_count() == 2 * g.edge_count() + extra,
            "R(G) vertex and edge counts",
            || format!("|V(R)| = {}, |E(R)| = {}", res.graph.n(), res.graph.edge_count()),
        )?;
    }
    let pipeline = pipeline_with_tau(g, tau_bound, budget_secs)?;
    ensure(g, pipeline.tau_r_shortcut == Some(rho), "shortcut applies to R(G) with value rho", || {
        format!("{:?}", pipeline.tau_r_shortcut)
    })?;
    if let Some(Bound::Exact(t)) = pipeline.tau_r_search {
        ensure(g, t == rho, "tau(R(G)) = rho by search", || format!("tau(R) = {t}, rho = {rho}"))?;
    }

    let conjecture_status = match tau_bound {
        Bound::Exact(t) if t == rho => ConjectureStatus::Confirmed,
        Bound::Exact(_) => ConjectureStatus::Counterexample,
        Bound::Undecided { lower, .. } if lower > rho => ConjectureStatus::Counterexample,
        Bound::Undecided { .. } => ConjectureStatus::Undecided,
    };

    let counterexample = (conjecture_status == ConjectureStatus::Counterexample).then(|| {
        let mut witnesses = Vec::new();
        if let Some(mu) = &tau_witness {
            witnesses.push(("tau_palette".to_string(), mu.to_text()));
        }
        if let Some(col) = chi_witness {
            witnesses.push(("chi_coloring".to_string(), col.to_text()));
        }
        Counterexample {
            kind: CounterexampleKind::TauConjecture,
            key: key.clone(),
            detail: format!(
                "tau = {tau_bound:?} exceeds max(delta, omega) = {rho} (delta = {delta}, omega = {omega})"
            ),
            graph: g.to_text(),
            child_graph: None,
            monotonicity: None,
            witnesses,
        }
    });

    let record = GraphRecord {
        key,
        n: g.n(),
        m: g.edge_count(),
        delta,
        p,
        omega,
        omega_star,
        chi_prime,
        chi_prime_certified,
        tau: tau_bound,
        tau_certified,
        chi_palette_sound,
        pipeline,
        conjecture_status,
        monotonicity: None,
        search_nodes: chi.nodes() + tau_outcome.nodes(),
    };
    Ok(Analysis {
        record,
        counterexample,
        tau_witness,
    })
}
