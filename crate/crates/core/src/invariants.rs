//! Density ω, matching density ω* and the bounds derived from them.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::matching::maximum_matching_adjacency;
use crate::multigraph::{EdgeSubset, Multigraph, VertexSet};

/// Largest vertex count for the 2^n subset scan behind [`density`].
pub const DENSITY_MAX_VERTICES: usize = 20;
/// Largest support size for the subset scan behind [`omega_star`].
pub const OMEGA_STAR_MAX_SUPPORT: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub value: usize,
    /// Empty only for edgeless graphs.
    pub witness_set: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaStarWitness {
    pub value: usize,
    pub witness_edges: EdgeSubset,
}

/// The value ⌈edges / ⌊size/2⌋⌉ for a vertex set of `size >= 2`.
pub fn density_ratio(edges: usize, size: usize) -> usize {
    debug_assert!(size >= 2);
    edges.div_ceil(size / 2)
}

/// ω(G) = max over vertex sets S with |S| >= 2 of ⌈|E(S)| / ⌊|S|/2⌋⌉.
///
/// Induced subgraphs suffice: for a fixed vertex set they carry the most
/// edges. Ties go to the numerically smallest subset mask.
pub fn density(g: &Multigraph) -> Result<DensityWitness, GraphError> {
    if g.n() > DENSITY_MAX_VERTICES {
        return Err(GraphError::BoundExceeded {
            what: "density subset scan",
            actual: g.n(),
            bound: DENSITY_MAX_VERTICES,
        });
    }
    let table = g.induced_edge_counts();
    let mut best = DensityWitness {
        value: 0,
        witness_set: VertexSet::EMPTY,
    };
    for (mask, &edges) in table.iter().enumerate() {
        let size = mask.count_ones() as usize;
        if size < 2 || edges == 0 {
            continue;
        }
        let value = density_ratio(edges as usize, size);
        if value > best.value {
            best = DensityWitness {
                value,
                witness_set: VertexSet(mask as u64),
            };
        }
    }
    Ok(best)
}

/// ω*(G) = max over nonempty edge sets F of ⌈|F| / π(F)⌉.
///
/// Only sets of support pairs taken at full multiplicity are scanned: adding
/// the remaining parallel copies of a chosen pair grows |F| and leaves π(F)
/// unchanged.
pub fn omega_star(g: &Multigraph) -> Result<OmegaStarWitness, GraphError> {
    let support: Vec<(usize, usize, u32)> = g.pairs().collect();
    if support.len() > OMEGA_STAR_MAX_SUPPORT {
        return Err(GraphError::BoundExceeded {
            what: "omega* support scan",
            actual: support.len(),
            bound: OMEGA_STAR_MAX_SUPPORT,
        });
    }
    let mut best_value = 0;
    let mut best_mask = 0u64;
    let mut adj = vec![0u64; g.n()];
    for mask in 1u64..1 << support.len() {
        adj.iter_mut().for_each(|a| *a = 0);
        let mut size = 0usize;
        let mut bits = mask;
        while bits != 0 {
            let (u, v, k) = support[bits.trailing_zeros() as usize];
            bits &= bits - 1;
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            size += k as usize;
        }
        let matching = maximum_matching_adjacency(&adj).len();
        let value = size.div_ceil(matching);
        if value > best_value {
            best_value = value;
            best_mask = mask;
        }
    }
    let mut witness_edges = EdgeSubset::new();
    for (i, &(u, v, k)) in support.iter().enumerate() {
        if best_mask >> i & 1 == 1 {
            witness_edges.add(u, v, k);
        }
    }
    Ok(OmegaStarWitness {
        value: best_value,
        witness_edges,
    })
}

/// Fractional chromatic index through the closed form max(Δ, ω).
/// The value is always an integer here because ω is already rounded up.
pub fn fractional_chromatic_index(g: &Multigraph) -> Result<usize, GraphError> {
    coloring_lower_bound(g)
}

/// ρ = max(Δ(G), ω(G)), the common lower bound for χ' and τ.
pub fn coloring_lower_bound(g: &Multigraph) -> Result<usize, GraphError> {
    Ok(g.max_degree().max(density(g)?.value))
}

/// Summary of the cheap invariants of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicInvariants {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub p: u32,
    pub omega: usize,
    pub rho: usize,
}

impl BasicInvariants {
    pub fn of(g: &Multigraph) -> Result<Self, GraphError> {
        let delta = g.max_degree();
        let omega = density(g)?.value;
        Ok(BasicInvariants {
            n: g.n(),
            m: g.edge_count(),
            delta,
            p: g.max_multiplicity(),
            omega,
            rho: delta.max(omega),
        })
    }
}
