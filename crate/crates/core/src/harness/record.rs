use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::search::Bound;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Tau,
    Monotone,
    All,
}

impl CheckKind {
    pub fn includes_tau(self) -> bool {
        matches!(self, CheckKind::Tau | CheckKind::All)
    }

    pub fn includes_monotone(self) -> bool {
        matches!(self, CheckKind::Monotone | CheckKind::All)
    }
}

/// Everything that determines a report's content. The worker count is
/// deliberately absent: it must not influence the output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParameters {
    pub max_vertices: usize,
    pub max_mult: u32,
    pub max_edges: usize,
    pub check: CheckKind,
    pub samples_per_graph: usize,
    pub seed: u64,
    pub budget_secs: u64,
}

impl Default for ScanParameters {
    fn default() -> Self {
        ScanParameters {
            max_vertices: 5,
            max_mult: 3,
            max_edges: 9,
            check: CheckKind::All,
            samples_per_graph: 20,
            seed: 0,
            budget_secs: 10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureStatus {
    Confirmed,
    Counterexample,
    Undecided,
}

/// R(G) and the inequalities chaining τ(G) to τ(R(G)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRecord {
    pub rho: usize,
    pub identity: bool,
    pub r_vertices: usize,
    pub r_edges: usize,
    pub omega_r: usize,
    /// τ(R) from the regular-graph shortcut; always ρ when it applies.
    pub tau_r_shortcut: Option<usize>,
    /// τ(R) by direct search, when R is small enough.
    pub tau_r_search: Option<Bound>,
    pub tau_g: Bound,
    /// τ(G) ≤ τ(R(G)); `None` while τ(G) is undecided.
    pub tau_g_le_tau_r: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityTally {
    pub checked: usize,
    pub violations: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub key: CanonicalKey,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub p: u32,
    pub omega: usize,
    pub omega_star: usize,
    pub chi_prime: Bound,
    pub chi_prime_certified: bool,
    pub tau: Bound,
    /// Search at τ − 1 ran to completion and found nothing.
    pub tau_certified: bool,
    /// The palette of the χ' witness passed the degree, cover and matching
    /// conditions.
    pub chi_palette_sound: bool,
    pub pipeline: PipelineRecord,
    pub conjecture_status: ConjectureStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monotonicity: Option<MonotonicityTally>,
    pub search_nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotonicityVerdict {
    Holds,
    Violation,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityRecord {
    pub parent: CanonicalKey,
    /// Human-readable description, e.g. `delete edges {0-1}`.
    pub derivation: String,
    pub child: CanonicalKey,
    pub tau_parent: Bound,
    pub tau_child: Bound,
    pub verdict: MonotonicityVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleKind {
    TauConjecture,
    Monotonicity,
}

/// Replayable evidence: graphs and witnesses in their text formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub kind: CounterexampleKind,
    pub key: CanonicalKey,
    pub detail: String,
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub child_graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monotonicity: Option<MonotonicityRecord>,
    /// `(name, text)` pairs, e.g. palette and coloring witnesses.
    pub witnesses: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub classes: usize,
    pub confirmed: usize,
    pub counterexamples: usize,
    pub undecided: usize,
    pub monotonicity_pairs: usize,
    pub monotonicity_violations: usize,
    pub monotonicity_undecided: usize,
    /// Total solver nodes; a deterministic measure of work done.
    pub search_nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub parameters: ScanParameters,
    /// Sorted by canonical key.
    pub records: Vec<GraphRecord>,
    pub counterexamples: Vec<Counterexample>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn has_counterexample(&self) -> bool {
        !self.counterexamples.is_empty()
    }

    pub fn has_undecided(&self) -> bool {
        self.summary.undecided > 0 || self.summary.monotonicity_undecided > 0
    }
}
