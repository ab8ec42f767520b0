//! Batch scans over the enumerated classes.
//!
//! Graphs are processed by a bounded rayon pool. Results are collected in
//! enumeration order and sampling seeds derive from the class index, so the
//! report does not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical_form, enumerate_multigraphs, CanonicalKey, EnumerationBounds};
use crate::degree::tau;
use crate::error::{GraphError, ScanError};
use crate::harness::analyze::analyze_graph;
use crate::harness::record::*;
use crate::multigraph::{EdgeSubset, Multigraph, VertexSet};
use crate::palette::PaletteAssignment;
use crate::search::{Bound, Budget};

/// Largest vertex count a scan accepts.
pub const SCAN_MAX_VERTICES: usize = 6;

fn check_parameters(params: &ScanParameters) -> Result<(), GraphError> {
    if params.max_vertices == 0 || params.max_vertices > SCAN_MAX_VERTICES {
        return Err(GraphError::BoundExceeded {
            what: "scan vertex bound",
            actual: params.max_vertices,
            bound: SCAN_MAX_VERTICES,
        });
    }
    Ok(())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, ScanError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| ScanError::Pool(e.to_string()))
}

/// Tau-conjecture scan only: equivalent to [`run_scan`] with
/// [`CheckKind::Tau`].
pub fn scan_tau(
    bounds: EnumerationBounds,
    budget_secs: u64,
    jobs: usize,
) -> Result<ScanReport, ScanError> {
    run_scan(
        &ScanParameters {
            max_vertices: bounds.max_vertices,
            max_mult: bounds.max_mult,
            max_edges: bounds.max_edges,
            check: CheckKind::Tau,
            budget_secs,
            ..ScanParameters::default()
        },
        jobs,
    )
}

pub fn scan_monotonicity(
    bounds: EnumerationBounds,
    samples_per_graph: usize,
    seed: u64,
    budget_secs: u64,
    jobs: usize,
) -> Result<ScanReport, ScanError> {
    run_scan(
        &ScanParameters {
            max_vertices: bounds.max_vertices,
            max_mult: bounds.max_mult,
            max_edges: bounds.max_edges,
            check: CheckKind::Monotone,
            samples_per_graph,
            seed,
            budget_secs,
        },
        jobs,
    )
}

/// Enumerates the classes, analyses each one (τ, χ', ω*, R(G) and all hard
/// assertions), then runs the monotonicity checks if requested.
pub fn run_scan(params: &ScanParameters, jobs: usize) -> Result<ScanReport, ScanError> {
    check_parameters(params)?;
    let bounds = EnumerationBounds {
        max_vertices: params.max_vertices,
        max_mult: params.max_mult,
        max_edges: params.max_edges,
    };
    let graphs: Vec<Multigraph> = enumerate_multigraphs(bounds)?.collect();
    let pool = pool(jobs)?;

    let analyses = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| analyze_graph(g, params.budget_secs))
            .collect::<Vec<_>>()
    });
    let mut records = Vec::with_capacity(graphs.len());
    let mut counterexamples = Vec::new();
    let mut witnesses = BTreeMap::new();
    for analysis in analyses {
        let analysis = analysis?;
        if params.check.includes_tau() {
            counterexamples.extend(analysis.counterexample);
        }
        if let Some(mu) = analysis.tau_witness {
            witnesses.insert(analysis.record.key.clone(), mu);
        }
        records.push(analysis.record);
    }

    if params.check.includes_monotone() {
        let taus: BTreeMap<CanonicalKey, Bound> =
            records.iter().map(|r| (r.key.clone(), r.tau)).collect();
        let checks = pool.install(|| {
            graphs
                .par_iter()
                .enumerate()
                .map(|(index, g)| check_monotonicity(g, index, params, &taus))
                .collect::<Vec<_>>()
        });
        for (record, check) in records.iter_mut().zip(checks) {
            let (tally, violations) = check?;
            record.monotonicity = Some(tally);
            for v in violations {
                counterexamples.push(monotonicity_bundle(v, &witnesses, params.budget_secs)?);
            }
        }
    }

    records.sort_by(|a, b| a.key.cmp(&b.key));
    counterexamples.sort_by(|a, b| (&a.key, a.kind as u8).cmp(&(&b.key, b.kind as u8)));
    let summary = summarize(&records);
    Ok(ScanReport {
        parameters: params.clone(),
        records,
        counterexamples,
        summary,
    })
}

fn summarize(records: &[GraphRecord]) -> ScanSummary {
    let mut s = ScanSummary {
        classes: records.len(),
        ..ScanSummary::default()
    };
    for r in records {
        match r.conjecture_status {
            ConjectureStatus::Confirmed => s.confirmed += 1,
            ConjectureStatus::Counterexample => s.counterexamples += 1,
            ConjectureStatus::Undecided => s.undecided += 1,
        }
        if let Some(t) = &r.monotonicity {
            s.monotonicity_pairs += t.checked;
            s.monotonicity_violations += t.violations;
            s.monotonicity_undecided += t.undecided;
        }
        s.search_nodes += r.search_nodes;
    }
    s
}

/// How a sub-multigraph was obtained from its parent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Derivation {
    DeleteEdges(Vec<(usize, usize, u32)>),
    DeleteVertices(Vec<usize>),
}

impl Derivation {
    pub fn apply(&self, g: &Multigraph) -> Result<Multigraph, GraphError> {
        match self {
            Derivation::DeleteEdges(edges) => {
                let mut f = EdgeSubset::new();
                for &(u, v, k) in edges {
                    f.add(u, v, k);
                }
                g.delete_edges(&f)
            }
            Derivation::DeleteVertices(vs) => {
                let removed = VertexSet::from_vertices(vs.iter().copied());
                Ok(g.induced_submultigraph(VertexSet(g.vertices().0 & !removed.0)))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Derivation::DeleteEdges(edges) => {
                let mut f = EdgeSubset::new();
                for &(u, v, k) in edges {
                    f.add(u, v, k);
                }
                format!("delete edges {f}")
            }
            Derivation::DeleteVertices(vs) => {
                format!("delete vertices {}", VertexSet::from_vertices(vs.iter().copied()))
            }
        }
    }
}

/// Every single-edge deletion (one per support pair), then up to
/// `samples` distinct seeded deeper deletions.
pub fn derivations(g: &Multigraph, samples: usize, rng: &mut ChaCha8Rng) -> Vec<Derivation> {
    let mut out: Vec<Derivation> = g
        .pairs()
        .map(|(u, v, _)| Derivation::DeleteEdges(vec![(u, v, 1)]))
        .collect();
    let mut seen: BTreeSet<Derivation> = out.iter().cloned().collect();
    let n = g.n();
    let instances: Vec<(usize, usize)> = g
        .pairs()
        .flat_map(|(u, v, k)| std::iter::repeat_n((u, v), k as usize))
        .collect();
    let m = instances.len();
    let can_delete_vertices = n >= 2;
    let can_delete_edges = m >= 2;
    if !can_delete_vertices && !can_delete_edges {
        return out;
    }
    let mut found = 0;
    let mut attempts = 0;
    while found < samples && attempts < samples * 20 {
        attempts += 1;
        let delete_vertices = can_delete_vertices && (!can_delete_edges || rng.gen_ratio(1, 3));
        let d = if delete_vertices {
            let k = rng.gen_range(1..n);
            let mut vs = sample(rng, n, k).into_vec();
            vs.sort_unstable();
            Derivation::DeleteVertices(vs)
        } else {
            let k = rng.gen_range(2..=m);
            let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
            for i in sample(rng, m, k) {
                *counts.entry(instances[i]).or_insert(0) += 1;
            }
            Derivation::DeleteEdges(counts.into_iter().map(|((u, v), c)| (u, v, c)).collect())
        };
        if seen.insert(d.clone()) {
            out.push(d);
            found += 1;
        }
    }
    out
}

/// Seed for the class at `index`; independent of scheduling.
fn class_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

struct Violation {
    parent: Multigraph,
    child: Multigraph,
    record: MonotonicityRecord,
}

fn check_monotonicity(
    g: &Multigraph,
    index: usize,
    params: &ScanParameters,
    taus: &BTreeMap<CanonicalKey, Bound>,
) -> Result<(MonotonicityTally, Vec<Violation>), ScanError> {
    let parent_key = canonical_form(g)?;
    let tau_parent = taus[&parent_key];
    let mut rng = ChaCha8Rng::seed_from_u64(class_seed(params.seed, index));
    let mut tally = MonotonicityTally::default();
    let mut violations = Vec::new();
    for d in derivations(g, params.samples_per_graph, &mut rng) {
        let child = d.apply(g)?;
        let child_key = canonical_form(&child)?;
        let tau_child = match taus.get(&child_key) {
            Some(&b) => b,
            None => tau(&child, Budget::seconds(params.budget_secs))?.bound(),
        };
        let verdict = if tau_child.lower() > tau_parent.upper() {
            MonotonicityVerdict::Violation
        } else if tau_child.upper() <= tau_parent.lower() {
            MonotonicityVerdict::Holds
        } else {
            MonotonicityVerdict::Undecided
        };
        tally.checked += 1;
        match verdict {
            MonotonicityVerdict::Holds => {}
            MonotonicityVerdict::Undecided => tally.undecided += 1,
            MonotonicityVerdict::Violation => {
                tally.violations += 1;
                violations.push(Violation {
                    parent: g.clone(),
                    child: child.clone(),
                    record: MonotonicityRecord {
                        parent: parent_key.clone(),
                        derivation: d.describe(),
                        child: child_key,
                        tau_parent,
                        tau_child,
                        verdict,
                    },
                });
            }
        }
    }
    Ok((tally, violations))
}

fn monotonicity_bundle(
    v: Violation,
    witnesses: &BTreeMap<CanonicalKey, PaletteAssignment>,
    budget_secs: u64,
) -> Result<Counterexample, ScanError> {
    let mut bundle_witnesses = Vec::new();
    if let Some(mu) = witnesses.get(&v.record.parent) {
        bundle_witnesses.push(("parent_tau_palette".to_string(), mu.to_text()));
    }
    if let Some(mu) = tau(&v.child, Budget::seconds(budget_secs))?.witness() {
        bundle_witnesses.push(("child_tau_palette".to_string(), mu.to_text()));
    }
    Ok(Counterexample {
        kind: CounterexampleKind::Monotonicity,
        key: v.record.parent.clone(),
        detail: format!(
            "{}: tau(child) = {:?} > tau(parent) = {:?}",
            v.record.derivation, v.record.tau_child, v.record.tau_parent
        ),
        graph: v.parent.to_text(),
        child_graph: Some(v.child.to_text()),
        monotonicity: Some(v.record),
        witnesses: bundle_witnesses,
    })
}
