//! Brute-force reference implementations used by the equivalence tests.
//! None of these share search code with the solvers they check.

use itertools::Itertools;

use crate::multigraph::{EdgeSubset, Multigraph, VertexSet};
use crate::palette::PaletteAssignment;

/// Maximum matching size by exhaustive include/exclude over support pairs.
pub fn brute_force_matching_size(g: &Multigraph) -> usize {
    let pairs: Vec<(usize, usize)> = g.pairs().map(|(u, v, _)| (u, v)).collect();
    fn go(pairs: &[(usize, usize)], used: u64) -> usize {
        match pairs.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = go(rest, used);
                if used >> u & 1 == 0 && used >> v & 1 == 0 {
                    skip.max(1 + go(rest, used | 1 << u | 1 << v))
                } else {
                    skip
                }
            }
        }
    }
    go(&pairs, 0)
}

fn brute_force_pi(f: &EdgeSubset) -> usize {
    let mut h_edges = Vec::new();
    let mut n = 0;
    for ((u, v), k) in f.pairs() {
        h_edges.push((u, v, k));
        n = n.max(v + 1);
    }
    brute_force_matching_size(&Multigraph::from_edges(n, &h_edges).expect("valid subset"))
}

/// ω* over every subset of edge instances, without the support reduction.
pub fn omega_star_all_instances(g: &Multigraph) -> usize {
    let instances: Vec<(usize, usize)> = g
        .pairs()
        .flat_map(|(u, v, k)| std::iter::repeat_n((u, v), k as usize))
        .collect();
    assert!(instances.len() <= 16, "instance oracle limited to 16 edges");
    let mut best = 0;
    for mask in 1u32..1 << instances.len() {
        let mut f = EdgeSubset::new();
        for (i, &(u, v)) in instances.iter().enumerate() {
            if mask >> i & 1 == 1 {
                f.add(u, v, 1);
            }
        }
        best = best.max((f.size() as usize).div_ceil(brute_force_pi(&f)));
    }
    best
}

/// Degree and cover conditions straight from their definitions.
pub fn satisfies_degree_and_cover(g: &Multigraph, mu: &PaletteAssignment) -> bool {
    let n = g.n();
    if (0..n).any(|x| mu.colors(x).count() != g.degree(x)) {
        return false;
    }
    (0u64..1 << n).all(|mask| {
        let s = VertexSet(mask);
        let rhs: usize = (1..=mu.colors_count())
            .map(|i| s.iter().filter(|&x| mu.contains(x, i)).count() / 2)
            .sum();
        g.induced_edge_count(s) <= rhs
    })
}

/// Every assignment of a `deg(x)`-subset of `1..=c` to each vertex.
pub fn all_degree_assignments(g: &Multigraph, c: usize) -> Vec<PaletteAssignment> {
    (0..g.n())
        .map(|x| (1..=c).combinations(g.degree(x)).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|sets| PaletteAssignment::from_sets(c, &sets))
        .collect()
}

/// τ by testing every assignment for `c = 0, 1, 2, ...`, no pruning and no
/// symmetry breaking.
pub fn naive_tau(g: &Multigraph) -> usize {
    (0..)
        .find(|&c| {
            all_degree_assignments(g, c)
                .iter()
                .any(|mu| satisfies_degree_and_cover(g, mu))
        })
        .expect("some color count works")
}
