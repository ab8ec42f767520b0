//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm). Parallel edges are irrelevant to matchings, so everything
//! here works on the support graph.

use std::collections::VecDeque;

use crate::multigraph::{EdgeSubset, Multigraph, VertexSet};

const NONE: usize = usize::MAX;

/// Support graph given as neighbour bitmasks.
struct Blossom<'a> {
    adj: &'a [u64],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [u64]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut bits = self.adj[v];
            while bits != 0 {
                let to = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn solve(mut self) -> Vec<usize> {
        let n = self.adj.len();
        // Greedy start; augmentation from every free vertex makes it exact.
        for v in 0..n {
            if self.mate[v] == NONE {
                let mut bits = self.adj[v];
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if self.mate[u] == NONE {
                        self.mate[u] = v;
                        self.mate[v] = u;
                        break;
                    }
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(mut u) = self.find_path(root) {
                while u != NONE {
                    let pv = self.parent[u];
                    let ppv = self.mate[pv];
                    self.mate[u] = pv;
                    self.mate[pv] = u;
                    u = ppv;
                }
            }
        }
        self.mate
    }
}

fn pairs_from_mates(mate: &[usize]) -> Vec<(usize, usize)> {
    mate.iter()
        .enumerate()
        .filter(|&(v, &u)| u != NONE && v < u)
        .map(|(v, &u)| (v, u))
        .collect()
}

/// Maximum matching over the given neighbour bitmasks (must be symmetric).
pub fn maximum_matching_adjacency(adj: &[u64]) -> Vec<(usize, usize)> {
    pairs_from_mates(&Blossom::new(adj).solve())
}

fn adjacency(g: &Multigraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for (u, v, _) in g.pairs() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// A maximum matching of `g` as pairs `(u, v)` with `u < v`.
pub fn maximum_matching(g: &Multigraph) -> Vec<(usize, usize)> {
    maximum_matching_adjacency(&adjacency(g))
}

/// π(F): size of a maximum matching using only pairs present in `f`.
pub fn pi(g: &Multigraph, f: &EdgeSubset) -> usize {
    let mut adj = vec![0u64; g.n()];
    for ((u, v), _) in f.pairs() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    maximum_matching_adjacency(&adj).len()
}

/// True iff the sub-multigraph induced on `s` has a perfect matching.
/// The empty set trivially does.
pub fn has_perfect_matching(g: &Multigraph, s: VertexSet) -> bool {
    if s.len() % 2 == 1 {
        return false;
    }
    let h = g.induced_submultigraph(s);
    2 * maximum_matching(&h).len() == h.n()
}
