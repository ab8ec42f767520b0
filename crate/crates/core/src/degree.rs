//! Degree-colorings: palette assignments satisfying the degree and cover
//! conditions, the index τ(G), and the search for degree-colorings that no
//! edge coloring produces.

use crate::coloring::exists_coloring_with_palette;
use crate::error::GraphError;
use crate::invariants::{coloring_lower_bound, density};
use crate::matching::has_perfect_matching;
use crate::multigraph::{Multigraph, VertexSet};
use crate::palette::{PaletteAssignment, MAX_COLORS};
use crate::search::{combinations, Budget, Found, SearchOutcome, Ticker};

/// Largest vertex count for the cover-condition subset scan.
pub const COVER_MAX_VERTICES: usize = 20;
/// Largest vertex count accepted by [`tau`].
pub const TAU_MAX_VERTICES: usize = 12;
/// Largest vertex count accepted by [`find_unrealizable_degree_coloring`].
pub const UNREALIZABLE_MAX_VERTICES: usize = 10;

/// A vertex set S with |E(S)| > Σ_i ⌊|S^(i)|/2⌋.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverViolation {
    pub set: VertexSet,
    pub lhs: usize,
    pub rhs: usize,
}

fn check_dimensions(g: &Multigraph, mu: &PaletteAssignment) -> Result<(), GraphError> {
    if mu.n() != g.n() {
        return Err(GraphError::DimensionMismatch {
            expected: g.n(),
            got: mu.n(),
        });
    }
    Ok(())
}

/// Σ_i ⌊|S ∩ V^(i)|/2⌋ over the given class masks.
fn cover_capacity(classes: &[u64], s: u64) -> usize {
    classes
        .iter()
        .map(|&class| (class & s).count_ones() as usize / 2)
        .sum()
}

pub fn check_degree_condition(g: &Multigraph, mu: &PaletteAssignment) -> Result<bool, GraphError> {
    check_dimensions(g, mu)?;
    Ok((0..g.n()).all(|x| mu.set_size(x) == g.degree(x)))
}

/// Scans every vertex subset; reports a violation of minimum cardinality,
/// ties broken by the smallest subset mask.
pub fn check_cover_condition(
    g: &Multigraph,
    mu: &PaletteAssignment,
) -> Result<Option<CoverViolation>, GraphError> {
    check_dimensions(g, mu)?;
    if g.n() > COVER_MAX_VERTICES {
        return Err(GraphError::BoundExceeded {
            what: "cover condition subset scan",
            actual: g.n(),
            bound: COVER_MAX_VERTICES,
        });
    }
    let table = g.induced_edge_counts();
    let classes = mu.class_masks();
    let mut best: Option<CoverViolation> = None;
    for (mask, &edges) in table.iter().enumerate() {
        let lhs = edges as usize;
        if lhs == 0 {
            continue;
        }
        let set = VertexSet(mask as u64);
        if best.as_ref().is_some_and(|b| b.set.len() <= set.len()) {
            continue;
        }
        let rhs = cover_capacity(&classes, mask as u64);
        if lhs > rhs {
            best = Some(CoverViolation { set, lhs, rhs });
        }
    }
    Ok(best)
}

/// Degree condition plus cover condition.
pub fn is_degree_coloring(g: &Multigraph, mu: &PaletteAssignment) -> Result<bool, GraphError> {
    Ok(check_degree_condition(g, mu)? && check_cover_condition(g, mu)?.is_none())
}

/// Colors `i` whose class V^(i) is nonempty and induces a sub-multigraph
/// without a perfect matching.
pub fn check_matching_condition(
    g: &Multigraph,
    mu: &PaletteAssignment,
) -> Result<Vec<usize>, GraphError> {
    check_dimensions(g, mu)?;
    Ok(mu
        .class_masks()
        .iter()
        .enumerate()
        .filter(|&(_, &class)| class != 0 && !has_perfect_matching(g, VertexSet(class)))
        .map(|(i, _)| i + 1)
        .collect())
}

/// Backtracking over per-vertex color sets with prefix-final cover checks.
///
/// Vertices are assigned in decreasing-degree order. After vertex `x` is
/// assigned, every S inside the assigned prefix that contains `x` is checked;
/// those checks are final since S^(i) depends only on assigned vertices.
/// Colors must first appear in increasing order, which removes color
/// permutations without losing any assignment up to relabelling.
struct DegreeSearch<'a> {
    order: Vec<usize>,
    edges: Vec<u32>,
    candidates: Vec<Vec<u64>>,
    sets: Vec<u64>,
    classes: Vec<u64>,
    ticker: Ticker,
    leaves: u64,
    on_leaf: &'a mut dyn FnMut(&[u64]) -> bool,
}

impl<'a> DegreeSearch<'a> {
    fn new(
        g: &Multigraph,
        c: usize,
        budget: Budget,
        on_leaf: &'a mut dyn FnMut(&[u64]) -> bool,
    ) -> Self {
        let degrees = g.degrees();
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(degrees[x]));
        let candidates = order.iter().map(|&x| combinations(c, degrees[x])).collect();
        DegreeSearch {
            order,
            edges: g.induced_edge_counts(),
            candidates,
            sets: vec![0; g.n()],
            classes: vec![0; c],
            ticker: Ticker::new(budget),
            leaves: 0,
            on_leaf,
        }
    }

    /// Some(true) if the leaf callback stopped the search, Some(false) on
    /// exhaustion, None on timeout.
    fn run(&mut self) -> Option<bool> {
        let stopped = self.extend(0, 0, 0);
        if self.ticker.exhausted {
            None
        } else {
            Some(stopped)
        }
    }

    fn cover_ok(&self, x: usize, prefix: u64) -> bool {
        let rest = prefix & !(1u64 << x);
        let mut sub = rest;
        loop {
            let s = sub | 1 << x;
            let lhs = self.edges[s as usize] as usize;
            if lhs > 0 && lhs > cover_capacity(&self.classes, s) {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & rest;
        }
    }

    fn extend(&mut self, pos: usize, prefix: u64, used: usize) -> bool {
        if pos == self.order.len() {
            self.leaves += 1;
            return (self.on_leaf)(&self.sets);
        }
        let x = self.order[pos];
        let prefix = prefix | 1 << x;
        for k in 0..self.candidates[pos].len() {
            if !self.ticker.tick() {
                return false;
            }
            let set = self.candidates[pos][k];
            let fresh = set.checked_shr(used as u32).unwrap_or(0);
            if fresh & (fresh + 1) != 0 {
                continue;
            }
            let used_after = used + fresh.count_ones() as usize;
            self.sets[x] = set;
            self.toggle(x, set);
            let stop = self.cover_ok(x, prefix) && self.extend(pos + 1, prefix, used_after);
            self.toggle(x, set);
            self.sets[x] = 0;
            if stop || self.ticker.exhausted {
                return stop;
            }
        }
        false
    }

    fn toggle(&mut self, x: usize, set: u64) {
        let mut bits = set;
        while bits != 0 {
            self.classes[bits.trailing_zeros() as usize] ^= 1 << x;
            bits &= bits - 1;
        }
    }
}

fn check_tau_bounds(g: &Multigraph, bound: usize, what: &'static str) -> Result<(), GraphError> {
    if g.n() > bound {
        return Err(GraphError::BoundExceeded {
            what,
            actual: g.n(),
            bound,
        });
    }
    Ok(())
}

/// Searches for any degree-coloring with colors `1..=c`.
/// Returns the outcome and the number of search nodes.
pub fn find_degree_coloring(
    g: &Multigraph,
    c: usize,
    budget: Budget,
) -> Result<(Found<PaletteAssignment>, u64), GraphError> {
    check_tau_bounds(g, TAU_MAX_VERTICES, "degree-coloring search")?;
    if c > MAX_COLORS {
        return Err(GraphError::BoundExceeded {
            what: "degree-coloring color count",
            actual: c,
            bound: MAX_COLORS,
        });
    }
    let mut witness = None;
    let mut on_leaf = |sets: &[u64]| {
        witness = Some(sets.to_vec());
        true
    };
    let mut search = DegreeSearch::new(g, c, budget, &mut on_leaf);
    let outcome = search.run();
    let nodes = search.ticker.nodes;
    drop(search);
    let found = match outcome {
        None => Found::Undecided,
        Some(false) => Found::No,
        Some(true) => Found::Yes(PaletteAssignment::from_masks(
            c,
            witness.expect("leaf recorded"),
        )),
    };
    Ok((found, nodes))
}

/// Exact τ(G): the least `c` admitting a degree-coloring, searched upward
/// from max(Δ, ω). When the first count tried succeeds, `c - 1` is searched
/// too so the witness carries an optimality certificate.
pub fn tau(g: &Multigraph, budget: Budget) -> Result<SearchOutcome<PaletteAssignment>, GraphError> {
    check_tau_bounds(g, TAU_MAX_VERTICES, "tau search")?;
    let lower = coloring_lower_bound(g)?;
    let upper = g.max_degree() + g.max_multiplicity() as usize;
    let mut nodes = 0;
    let mut c = lower;
    loop {
        let (found, n) = find_degree_coloring(g, c, budget)?;
        nodes += n;
        match found {
            Found::Undecided => {
                return Ok(SearchOutcome::Undecided {
                    lower: c,
                    upper: upper.max(c),
                    nodes,
                })
            }
            Found::No => c += 1,
            Found::Yes(witness) => {
                let optimality_certified = if c == lower && c > 0 {
                    let (below, n) = find_degree_coloring(g, c - 1, budget)?;
                    nodes += n;
                    below == Found::No
                } else {
                    true
                };
                return Ok(SearchOutcome::Exact {
                    value: c,
                    witness,
                    optimality_certified,
                    nodes,
                });
            }
        }
    }
}

/// For a Δ-regular graph with ω ≤ Δ: τ = Δ, witnessed by giving every
/// vertex all of `1..=Δ`.
pub fn tau_regular_shortcut(
    g: &Multigraph,
) -> Result<Option<(usize, PaletteAssignment)>, GraphError> {
    if g.n() == 0 || !g.is_regular() {
        return Ok(None);
    }
    let delta = g.max_degree();
    if density(g)?.value > delta {
        return Ok(None);
    }
    Ok(Some((delta, PaletteAssignment::uniform(g.n(), delta))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrealizableSearch {
    pub result: Found<PaletteAssignment>,
    pub nodes: u64,
    /// Degree-colorings (up to color relabelling) examined.
    pub degree_colorings: u64,
}

/// Looks for a degree-coloring with colors `1..=c` that fails the matching
/// condition. Any witness is re-verified by the independent checkers.
pub fn find_unrealizable_degree_coloring(
    g: &Multigraph,
    c: usize,
    budget: Budget,
) -> Result<UnrealizableSearch, GraphError> {
    check_tau_bounds(g, UNREALIZABLE_MAX_VERTICES, "unrealizable degree-coloring search")?;
    if c > MAX_COLORS {
        return Err(GraphError::BoundExceeded {
            what: "degree-coloring color count",
            actual: c,
            bound: MAX_COLORS,
        });
    }
    let mut witness = None;
    let mut on_leaf = |sets: &[u64]| {
        let mu = PaletteAssignment::from_masks(c, sets.to_vec());
        let fails = mu
            .class_masks()
            .iter()
            .any(|&class| class != 0 && !has_perfect_matching(g, VertexSet(class)));
        if fails {
            witness = Some(mu);
        }
        fails
    };
    let mut search = DegreeSearch::new(g, c, budget, &mut on_leaf);
    let outcome = search.run();
    let (nodes, degree_colorings) = (search.ticker.nodes, search.leaves);
    drop(search);
    let result = match outcome {
        None => Found::Undecided,
        Some(false) => Found::No,
        Some(true) => {
            let mu = witness.expect("leaf recorded");
            assert!(is_degree_coloring(g, &mu)?, "witness fails degree-coloring check");
            assert!(!check_matching_condition(g, &mu)?.is_empty());
            assert!(exists_coloring_with_palette(g, &mu)?.is_none());
            Found::Yes(mu)
        }
    };
    Ok(UnrealizableSearch {
        result,
        nodes,
        degree_colorings,
    })
}

#[cfg(test)]
mod tests {
    use crate::oracle::*;
    use super::*;
    use crate::coloring::{chromatic_index, palette};
    use crate::multigraph::named::*;

    fn sets(c: usize, s: &[&[usize]]) -> PaletteAssignment {
        let owned: Vec<Vec<usize>> = s.iter().map(|v| v.to_vec()).collect();
        PaletteAssignment::from_sets(c, &owned)
    }

    fn exact_tau(g: &Multigraph) -> (usize, PaletteAssignment, bool) {
        match tau(g, Budget::unlimited()).unwrap() {
            SearchOutcome::Exact {
                value,
                witness,
                optimality_certified,
                ..
            } => (value, witness, optimality_certified),
            other => panic!("undecided: {other:?}"),
        }
    }

    #[test]
    fn degree_condition_examples() {
        let k3 = complete(3);
        let SearchOutcome::Exact { witness, .. } = chromatic_index(&k3, Budget::unlimited()).unwrap()
        else {
            panic!()
        };
        assert!(check_degree_condition(&k3, &palette(&k3, &witness).unwrap()).unwrap());
        assert!(!check_degree_condition(&k3, &sets(1, &[&[1], &[1], &[1]])).unwrap());
        let edgeless = Multigraph::new(3).unwrap();
        assert!(check_degree_condition(&edgeless, &PaletteAssignment::uniform(3, 0)).unwrap());
        assert!(check_degree_condition(&k3, &PaletteAssignment::uniform(2, 2)).is_err());
    }

    #[test]
    fn cover_condition_examples() {
        let k3 = complete(3);
        let v = check_cover_condition(&k3, &PaletteAssignment::uniform(3, 2))
            .unwrap()
            .unwrap();
        assert_eq!((v.set, v.lhs, v.rhs), (k3.vertices(), 3, 2));

        let mu = sets(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(check_cover_condition(&k3, &mu).unwrap(), None);

        let mu = sets(1, &[&[1], &[1]]);
        assert_eq!(check_cover_condition(&single_edge(), &mu).unwrap(), None);
    }

    #[test]
    fn cover_violation_is_smallest() {
        // Disjoint edges 0-1 and 2-3: μ puts no shared color on 2-3.
        let g = Multigraph::from_edges(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        let mu = sets(2, &[&[1], &[1], &[1], &[2]]);
        let v = check_cover_condition(&g, &mu).unwrap().unwrap();
        assert_eq!(v.set, VertexSet::from_vertices([2, 3]));
        assert_eq!((v.lhs, v.rhs), (1, 0));
    }

    #[test]
    fn degree_coloring_examples() {
        assert!(!is_degree_coloring(&complete(3), &PaletteAssignment::uniform(3, 2)).unwrap());
        let edgeless = Multigraph::new(2).unwrap();
        assert!(is_degree_coloring(&edgeless, &PaletteAssignment::uniform(2, 0)).unwrap());
    }

    #[test]
    fn matching_condition_examples() {
        let p3 = sets(2, &[&[1], &[1, 2], &[2]]);
        assert!(check_matching_condition(&path(3), &p3).unwrap().is_empty());
        let k3 = sets(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(check_matching_condition(&complete(3), &k3).unwrap().is_empty());
        let bad = PaletteAssignment::uniform(3, 2);
        assert_eq!(check_matching_condition(&complete(3), &bad).unwrap(), vec![1, 2]);
    }

    #[test]
    fn tau_examples() {
        let (value, witness, certified) = exact_tau(&single_edge());
        assert_eq!((value, certified), (1, true));
        assert_eq!(witness, sets(1, &[&[1], &[1]]));

        for (g, expected) in [(complete(3), 3), (cycle(5), 3), (petersen(), 3), (path(3), 2)] {
            let (value, witness, certified) = exact_tau(&g);
            assert_eq!(value, expected, "{g:?}");
            assert!(certified);
            assert!(is_degree_coloring(&g, &witness).unwrap());
        }
        assert_eq!(exact_tau(&doubled_triangle()).0, 6);
        assert_eq!(exact_tau(&Multigraph::new(2).unwrap()).0, 0);
    }

    #[test]
    fn tau_k3_by_naive_oracle() {
        let k3 = complete(3);
        assert!(!all_degree_assignments(&k3, 2)
            .iter()
            .any(|mu| satisfies_degree_and_cover(&k3, mu)));
        assert!(all_degree_assignments(&k3, 3)
            .iter()
            .any(|mu| satisfies_degree_and_cover(&k3, mu)));
        assert_eq!(naive_tau(&k3), 3);
        assert_eq!(naive_tau(&cycle(5)), 3);
    }

    #[test]
    fn checker_agrees_with_definition() {
        for (g, c) in [(complete(3), 3), (cycle(4), 3), (star(3), 3), (doubled_triangle(), 5)] {
            for mu in all_degree_assignments(&g, c) {
                assert_eq!(is_degree_coloring(&g, &mu).unwrap(), satisfies_degree_and_cover(&g, &mu));
            }
        }
    }

    #[test]
    fn tau_matches_naive_oracle_small() {
        use crate::canon::{enumerate_multigraphs, EnumerationBounds};
        let bounds = EnumerationBounds {
            max_vertices: 3,
            max_mult: 2,
            max_edges: 6,
        };
        for g in enumerate_multigraphs(bounds).unwrap() {
            assert_eq!(exact_tau(&g).0, naive_tau(&g), "{g:?}");
        }
    }

    #[test]
    fn tau_refuses_large_graphs() {
        assert!(tau(&cycle(13), Budget::unlimited()).is_err());
    }

    #[test]
    fn tau_timeout_is_undecided() {
        let outcome = tau(&petersen(), Budget::from_duration(std::time::Duration::ZERO)).unwrap();
        // Either finished within the first poll interval or reported bounds.
        if let SearchOutcome::Undecided { lower, upper, .. } = outcome {
            assert!(lower <= upper);
            assert_eq!(lower, 3);
        }
    }

    #[test]
    fn regular_shortcut_examples() {
        let (value, mu) = tau_regular_shortcut(&petersen()).unwrap().unwrap();
        assert_eq!(value, 3);
        assert_eq!(mu, PaletteAssignment::uniform(10, 3));
        assert!(is_degree_coloring(&petersen(), &mu).unwrap());
        assert_eq!(tau_regular_shortcut(&complete(3)).unwrap(), None);
        assert_eq!(tau_regular_shortcut(&path(3)).unwrap(), None);
    }

    #[test]
    fn unrealizable_examples() {
        let s = find_unrealizable_degree_coloring(&single_edge(), 1, Budget::unlimited()).unwrap();
        assert_eq!(s.result, Found::No);
        assert_eq!(s.degree_colorings, 1);
        let s = find_unrealizable_degree_coloring(&path(3), 2, Budget::unlimited()).unwrap();
        assert_eq!(s.result, Found::No);
    }

    #[test]
    fn p3_degree_colorings_at_two_colors_are_realizable() {
        // Exhaustive oracle over every assignment, no symmetry breaking.
        let g = path(3);
        let dcs: Vec<_> = all_degree_assignments(&g, 2)
            .into_iter()
            .filter(|mu| is_degree_coloring(&g, mu).unwrap())
            .collect();
        assert_eq!(dcs.len(), 2);
        for mu in dcs {
            assert!(check_matching_condition(&g, &mu).unwrap().is_empty());
            assert!(exists_coloring_with_palette(&g, &mu).unwrap().is_some());
        }
    }

    #[test]
    fn symmetry_broken_search_visits_every_class() {
        // Count degree-colorings up to color relabelling both ways.
        use std::collections::BTreeSet;
        let canon = |mu: &PaletteAssignment, c: usize| {
            use itertools::Itertools;
            (0..c)
                .permutations(c)
                .map(|perm| {
                    mu.masks()
                        .iter()
                        .map(|&m| {
                            (0..c).fold(0u64, |acc, i| acc | ((m >> i & 1) << perm[i]))
                        })
                        .collect::<Vec<_>>()
                })
                .min()
                .unwrap()
        };
        for (g, c) in [(cycle(4), 3), (path(4), 3), (doubled_triangle(), 6), (star(3), 4)] {
            let expected: BTreeSet<_> = all_degree_assignments(&g, c)
                .iter()
                .filter(|mu| is_degree_coloring(&g, mu).unwrap())
                .map(|mu| canon(mu, c))
                .collect();
            let mut seen = BTreeSet::new();
            let mut on_leaf = |s: &[u64]| {
                let mu = PaletteAssignment::from_masks(c, s.to_vec());
                assert!(is_degree_coloring(&g, &mu).unwrap());
                seen.insert(canon(&mu, c));
                false
            };
            let mut search = DegreeSearch::new(&g, c, Budget::unlimited(), &mut on_leaf);
            assert_eq!(search.run(), Some(false));
            drop(search);
            assert_eq!(seen, expected, "{g:?}");
        }
    }
}
