//! The regularization R(G): a max(Δ, ω)-regular multigraph containing G as
//! an induced sub-multigraph.

use std::fmt;

use crate::canon::are_isomorphic;
use crate::error::GraphError;
use crate::invariants::density;
use crate::multigraph::{Multigraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizationResult {
    pub graph: Multigraph,
    /// `embedding[x]` is the vertex of R(G) that represents `x`.
    pub embedding: Vec<usize>,
    pub rho: usize,
}

impl RegularizationResult {
    /// One `map <x> <f(x)>` line per vertex of G.
    pub fn embedding_text(&self) -> String {
        self.embedding
            .iter()
            .enumerate()
            .map(|(x, fx)| format!("map {x} {fx}\n"))
            .collect()
    }

    /// True when R(G) = G.
    pub fn is_identity(&self) -> bool {
        self.embedding.iter().enumerate().all(|(x, &fx)| x == fx)
            && self.graph.n() == self.embedding.len()
    }
}

/// If G is regular with ω ≤ Δ, R(G) = G. Otherwise R(G) is G plus a
/// disjoint copy (vertex `x` copied to `x + n`), with ρ − deg(x) parallel
/// edges added between each `x` and its copy.
pub fn regularize(g: &Multigraph) -> Result<RegularizationResult, GraphError> {
    let delta = g.max_degree();
    let omega = density(g)?.value;
    let rho = delta.max(omega);
    let n = g.n();
    if g.is_regular() && omega <= delta {
        return Ok(RegularizationResult {
            graph: g.clone(),
            embedding: (0..n).collect(),
            rho,
        });
    }
    let mut r = g.disjoint_union(g)?;
    for x in 0..n {
        let extra = rho - g.degree(x);
        if extra > 0 {
            r.add_edges(x, x + n, extra as u32)?;
        }
    }
    Ok(RegularizationResult {
        graph: r,
        embedding: (0..n).collect(),
        rho,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularizationProperty {
    /// Every vertex of R has degree ρ.
    Regular,
    /// Δ(R) = ρ.
    MaxDegree,
    /// ω(G) ≤ ω(R) ≤ ρ.
    DensityBounds,
    /// R induced on the embedded image is G.
    InducedEmbedding,
}

impl fmt::Display for RegularizationProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RegularizationProperty::Regular => "R is rho-regular",
            RegularizationProperty::MaxDegree => "max degree of R equals rho",
            RegularizationProperty::DensityBounds => "omega(G) <= omega(R) <= rho",
            RegularizationProperty::InducedEmbedding => "G is induced in R via the embedding",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizationReport {
    pub rho: usize,
    pub omega_g: usize,
    pub omega_r: usize,
    pub delta_r: usize,
    pub failures: Vec<RegularizationProperty>,
}

impl RegularizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_regularization(
    g: &Multigraph,
    res: &RegularizationResult,
) -> Result<RegularizationReport, GraphError> {
    let r = &res.graph;
    let omega_g = density(g)?.value;
    let omega_r = density(r)?.value;
    let delta_r = r.max_degree();
    let rho = g.max_degree().max(omega_g);
    let mut failures = Vec::new();
    if res.rho != rho || !r.degrees().iter().all(|&d| d == rho) {
        failures.push(RegularizationProperty::Regular);
    }
    if delta_r != rho {
        failures.push(RegularizationProperty::MaxDegree);
    }
    if !(omega_g <= omega_r && omega_r <= rho) {
        failures.push(RegularizationProperty::DensityBounds);
    }
    if !embedding_is_induced(g, res) {
        failures.push(RegularizationProperty::InducedEmbedding);
    }
    Ok(RegularizationReport {
        rho,
        omega_g,
        omega_r,
        delta_r,
        failures,
    })
}

fn embedding_is_induced(g: &Multigraph, res: &RegularizationResult) -> bool {
    let f = &res.embedding;
    if f.len() != g.n() || f.iter().any(|&fx| fx >= res.graph.n()) {
        return false;
    }
    let image = VertexSet::from_vertices(f.iter().copied());
    if image.len() != g.n() {
        return false;
    }
    (0..g.n()).all(|u| (0..g.n()).all(|v| g.mult(u, v) == res.graph.mult(f[u], f[v])))
}

/// Structural check against an expected graph, up to isomorphism.
pub fn regularization_is_isomorphic_to(
    res: &RegularizationResult,
    expected: &Multigraph,
) -> Result<bool, GraphError> {
    are_isomorphic(&res.graph, expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::named::*;

    #[test]
    fn petersen_is_fixed() {
        let g = petersen();
        let res = regularize(&g).unwrap();
        assert_eq!(res.graph, g);
        assert!(res.is_identity());
        assert_eq!(res.rho, 3);
        assert!(verify_regularization(&g, &res).unwrap().passed());
    }

    #[test]
    fn p3_becomes_c6() {
        let g = path(3);
        let res = regularize(&g).unwrap();
        assert_eq!(res.rho, 2);
        assert_eq!(res.graph.n(), 6);
        assert_eq!(res.graph.edge_count(), 6);
        assert_eq!(res.graph.mult(0, 3), 1);
        assert_eq!(res.graph.mult(1, 4), 0);
        assert_eq!(res.graph.mult(2, 5), 1);
        assert!(regularization_is_isomorphic_to(&res, &cycle(6)).unwrap());
        let report = verify_regularization(&g, &res).unwrap();
        assert!(report.passed());
        assert_eq!((report.delta_r, report.omega_r), (2, 2));
    }

    #[test]
    fn k3_becomes_prism() {
        let g = complete(3);
        let res = regularize(&g).unwrap();
        assert_eq!(res.rho, 3);
        assert!(regularization_is_isomorphic_to(&res, &prism()).unwrap());
        let report = verify_regularization(&g, &res).unwrap();
        assert!(report.passed());
        assert_eq!((report.delta_r, report.omega_r), (3, 3));
    }

    #[test]
    fn edgeless_is_fixed() {
        let g = Multigraph::new(3).unwrap();
        let res = regularize(&g).unwrap();
        assert_eq!(res.graph, g);
        assert!(verify_regularization(&g, &res).unwrap().passed());
    }

    #[test]
    fn counts_in_non_identity_case() {
        for g in [path(4), star(3), doubled_triangle(), complete(3)] {
            let res = regularize(&g).unwrap();
            let extra: usize = g.degrees().iter().map(|d| res.rho - d).sum();
            assert_eq!(res.graph.n(), 2 * g.n());
            assert_eq!(res.graph.edge_count(), 2 * g.edge_count() + extra);
        }
    }

    #[test]
    fn broken_embedding_is_reported() {
        let g = path(3);
        let mut res = regularize(&g).unwrap();
        res.embedding = vec![0, 2, 1];
        let report = verify_regularization(&g, &res).unwrap();
        assert_eq!(report.failures, vec![RegularizationProperty::InducedEmbedding]);
    }

    #[test]
    fn embedding_serialization() {
        let res = regularize(&path(2)).unwrap();
        assert_eq!(res.embedding_text(), "map 0 0\nmap 1 1\n");
    }
}
