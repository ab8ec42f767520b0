//! Loopless multigraphs stored as a symmetric multiplicity table.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{GraphError, ParseError};

/// Vertex sets are bitmasks, so graphs are capped at 64 vertices.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
}

/// A subset of `0..n` packed into a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        VertexSet(vertices.into_iter().fold(0, |acc, v| acc | (1u64 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Edge counts per unordered pair, keyed with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    counts: BTreeMap<(usize, usize), u32>,
}

impl EdgeSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, u: usize, v: usize, k: u32) {
        if k == 0 {
            return;
        }
        *self.counts.entry(ordered(u, v)).or_insert(0) += k;
    }

    pub fn count(&self, u: usize, v: usize) -> u32 {
        self.counts.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    /// Total number of edge instances.
    pub fn size(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Pairs with a nonzero count, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.counts.iter().map(|(&p, &k)| (p, k))
    }

    pub fn validate(&self, g: &Multigraph) -> Result<(), GraphError> {
        for (&(u, v), &k) in &self.counts {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if v >= g.n() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
            }
            let available = g.mult(u, v);
            if k > available {
                return Err(GraphError::SubsetExceedsMultiplicity {
                    u,
                    v,
                    requested: k,
                    available,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, ((u, v), k)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if k == 1 {
                write!(f, "{u}-{v}")?;
            } else {
                write!(f, "{u}-{v}x{k}")?;
            }
        }
        write!(f, "}}")
    }
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Multigraph {
            n,
            mult: vec![0; n * n],
        })
    }

    /// Builds a graph from `(u, v, k)` triples; repeated pairs accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for &(u, v, k) in edges {
            g.add_edges(u, v, k)?;
        }
        Ok(g)
    }

    /// Builds a graph from the upper-triangular multiplicity sequence
    /// `(0,1), (0,2), ..., (n-2,n-1)`.
    pub fn from_upper_triangle(n: usize, entries: &[u32]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        assert_eq!(entries.len(), n * n.saturating_sub(1) / 2);
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                g.set_mult(u, v, entries[idx]);
                idx += 1;
            }
        }
        Ok(g)
    }

    pub fn add_edges(&mut self, u: usize, v: usize, k: u32) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        let k = self.mult(u, v) + k;
        self.set_mult(u, v, k);
        Ok(())
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(())
    }

    fn set_mult(&mut self, u: usize, v: usize, k: u32) {
        self.mult[u * self.n + v] = k;
        self.mult[v * self.n + u] = k;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mult(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Number of edge instances.
    pub fn edge_count(&self) -> usize {
        self.pairs().map(|(_, _, k)| k as usize).sum()
    }

    /// Pairs `(u, v, mult)` with `u < v` and `mult > 0`, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| {
                let k = self.mult(u, v);
                (k > 0).then_some((u, v, k))
            })
        })
    }

    pub fn upper_triangle(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                out.push(self.mult(u, v));
            }
        }
        out
    }

    pub fn degree(&self, x: usize) -> usize {
        self.mult[x * self.n..(x + 1) * self.n]
            .iter()
            .map(|&k| k as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.degree(x)).collect()
    }

    /// Δ(G); 0 for edgeless and empty graphs.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|x| self.degree(x)).max().unwrap_or(0)
    }

    /// p(G), the largest multiplicity.
    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        let mut degrees = (0..self.n).map(|x| self.degree(x));
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.mult(x, v) > 0)
    }

    /// |E(S)|: edges with both ends in `s`.
    pub fn induced_edge_count(&self, s: VertexSet) -> usize {
        let mut total = 0;
        for u in s.iter() {
            for v in s.iter().filter(|&v| v > u) {
                total += self.mult(u, v) as usize;
            }
        }
        total
    }

    /// |E(S)| for every subset mask of `0..n`. Requires `n <= 24`.
    pub fn induced_edge_counts(&self) -> Vec<u32> {
        assert!(self.n <= 24, "subset table too large");
        let size = 1usize << self.n;
        let mut table = vec![0u32; size];
        for s in 1..size {
            let top = 63 - (s as u64).leading_zeros() as usize;
            let rest = s & !(1 << top);
            let mut added = 0;
            let mut bits = rest;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                added += self.mult(top, v);
                bits &= bits - 1;
            }
            table[s] = table[rest] + added;
        }
        table
    }

    /// Induced sub-multigraph on `s`, relabelled in increasing vertex order.
    pub fn induced_submultigraph(&self, s: VertexSet) -> Multigraph {
        let kept: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut h = Multigraph {
            n: kept.len(),
            mult: vec![0; kept.len() * kept.len()],
        };
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                h.set_mult(i, j, self.mult(u, v));
            }
        }
        h
    }

    pub fn delete_edges(&self, f: &EdgeSubset) -> Result<Multigraph, GraphError> {
        f.validate(self)?;
        let mut h = self.clone();
        for ((u, v), k) in f.pairs() {
            h.set_mult(u, v, self.mult(u, v) - k);
        }
        Ok(h)
    }

    /// Relabels vertex `x` as `perm[x]`.
    pub fn permute(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.n);
        let mut h = Multigraph {
            n: self.n,
            mult: vec![0; self.n * self.n],
        };
        for (u, v, k) in self.pairs() {
            h.set_mult(perm[u], perm[v], k);
        }
        h
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Result<Multigraph, GraphError> {
        let mut g = Multigraph::new(self.n + other.n)?;
        for (u, v, k) in self.pairs() {
            g.set_mult(u, v, k);
        }
        for (u, v, k) in other.pairs() {
            g.set_mult(u + self.n, v + self.n, k);
        }
        Ok(g)
    }

    /// All edges as an [`EdgeSubset`].
    pub fn all_edges(&self) -> EdgeSubset {
        let mut f = EdgeSubset::new();
        for (u, v, k) in self.pairs() {
            f.add(u, v, k);
        }
        f
    }

    /// Text graph format: `n <N>` then one `e <u> <v> <k>` line per pair.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v, k) in self.pairs() {
            out.push_str(&format!("e {u} {v} {k}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Multigraph, ParseError> {
        let mut graph: Option<Multigraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match (tokens[0], graph.as_mut()) {
                ("n", None) => {
                    if tokens.len() != 2 {
                        return Err(syntax(line, "expected `n <count>`"));
                    }
                    let n = parse_index(tokens[1], line)?;
                    graph = Some(Multigraph::new(n).map_err(|e| syntax(line, &e.to_string()))?);
                }
                ("n", Some(_)) => return Err(syntax(line, "duplicate `n` header")),
                ("e", None) => return Err(ParseError::MissingHeader),
                ("e", Some(g)) => {
                    if tokens.len() != 3 && tokens.len() != 4 {
                        return Err(syntax(line, "expected `e <u> <v> [<k>]`"));
                    }
                    let u = parse_index(tokens[1], line)?;
                    let v = parse_index(tokens[2], line)?;
                    let k = match tokens.get(3) {
                        None => 1,
                        Some(tok) => {
                            let value: i64 = tok
                                .parse()
                                .map_err(|_| syntax(line, &format!("bad multiplicity `{tok}`")))?;
                            if value < 0 {
                                return Err(ParseError::NegativeMultiplicity { line, value });
                            }
                            u32::try_from(value)
                                .map_err(|_| syntax(line, "multiplicity too large"))?
                        }
                    };
                    for vertex in [u, v] {
                        if vertex >= g.n {
                            return Err(ParseError::VertexOutOfRange { line, vertex, n: g.n });
                        }
                    }
                    if u == v {
                        return Err(ParseError::Loop { line, vertex: u });
                    }
                    g.add_edges(u, v, k).map_err(|e| syntax(line, &e.to_string()))?;
                }
                (other, _) => return Err(syntax(line, &format!("unknown directive `{other}`"))),
            }
        }
        graph.ok_or(ParseError::MissingHeader)
    }
}

fn syntax(line: usize, message: &str) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.to_string(),
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, &format!("bad vertex or count `{tok}`")))
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}", self.n)?;
        for (u, v, k) in self.pairs() {
            write!(f, " {u}-{v}x{k}")?;
        }
        write!(f, ")")
    }
}

/// Small named graphs used across tests, benches and the CLI.
pub mod named {
    use super::Multigraph;

    pub fn single_edge() -> Multigraph {
        parallel_edge(1)
    }

    pub fn parallel_edge(k: u32) -> Multigraph {
        Multigraph::from_edges(2, &[(0, 1, k)]).unwrap()
    }

    pub fn path(n: usize) -> Multigraph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v, 1)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Multigraph {
        multicycle(&vec![1; n])
    }

    /// Cycle through `0..len` with edge `i -- i+1 (mod len)` of multiplicity `mults[i]`.
    pub fn multicycle(mults: &[u32]) -> Multigraph {
        let n = mults.len();
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, mults[i])).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 1));
            }
        }
        Multigraph::from_edges(n, &edges).unwrap()
    }

    pub fn star(leaves: usize) -> Multigraph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v, 1)).collect();
        Multigraph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// K3 with every edge doubled.
    pub fn doubled_triangle() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap()
    }

    /// Two triangles joined by a perfect matching.
    pub fn prism() -> Multigraph {
        Multigraph::from_edges(
            6,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (3, 4, 1),
                (4, 5, 1),
                (3, 5, 1),
                (0, 3, 1),
                (1, 4, 1),
                (2, 5, 1),
            ],
        )
        .unwrap()
    }

    /// Outer 5-cycle on 0..5, spokes `i -- i+5`, inner pentagram on 5..10.
    pub fn petersen() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5, 1));
            edges.push((i, i + 5, 1));
            edges.push((5 + i, 5 + (i + 2) % 5, 1));
        }
        Multigraph::from_edges(10, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn parse_examples() {
        let g = Multigraph::parse("n 2\ne 0 1 3").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.mult(0, 1), 3);
        assert_eq!(g.mult(1, 0), 3);

        let k3 = Multigraph::parse("n 3\ne 0 1\ne 1 2\ne 0 2").unwrap();
        assert_eq!(k3, complete(3));

        assert_eq!(
            Multigraph::parse("n 2\ne 0 0 1"),
            Err(ParseError::Loop { line: 2, vertex: 0 })
        );
    }

    #[test]
    fn parse_accumulates_and_skips_comments() {
        let g = Multigraph::parse("# double edge\nn 2\n\ne 0 1\ne 1 0 2\n").unwrap();
        assert_eq!(g.mult(0, 1), 3);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(matches!(
            Multigraph::parse("n 2\ne 0 5"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 5, n: 2 })
        ));
        assert!(matches!(
            Multigraph::parse("n 2\n# c\ne 0 1 -2"),
            Err(ParseError::NegativeMultiplicity { line: 3, value: -2 })
        ));
        assert!(matches!(
            Multigraph::parse("n 2\nx 0 1"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            Multigraph::parse("e 0 1"),
            Err(ParseError::MissingHeader)
        ));
        assert!(matches!(Multigraph::parse(""), Err(ParseError::MissingHeader)));
    }

    #[test]
    fn degrees() {
        assert!(complete(3).degrees().iter().all(|&d| d == 2));
        assert_eq!(parallel_edge(2).degree(0), 2);
        assert_eq!(star(3).degree(0), 3);

        assert_eq!(petersen().max_degree(), 3);
        assert_eq!(doubled_triangle().max_degree(), 4);
        assert_eq!(single_edge().max_degree(), 1);
        assert_eq!(Multigraph::new(0).unwrap().max_degree(), 0);
    }

    #[test]
    fn multiplicity() {
        assert_eq!(complete(3).max_multiplicity(), 1);
        assert_eq!(parallel_edge(3).max_multiplicity(), 3);
        assert_eq!(Multigraph::new(4).unwrap().max_multiplicity(), 0);
    }

    #[test]
    fn induced_counts() {
        let k3 = complete(3);
        assert_eq!(k3.induced_edge_count(k3.vertices()), 3);
        assert_eq!(k3.induced_edge_count(VertexSet::from_vertices([0, 2])), 1);
        assert_eq!(k3.induced_edge_count(VertexSet::from_vertices([1])), 0);
        assert_eq!(k3.induced_edge_count(VertexSet::EMPTY), 0);

        let p = petersen();
        let table = p.induced_edge_counts();
        for s in 0..1u64 << p.n() {
            assert_eq!(table[s as usize] as usize, p.induced_edge_count(VertexSet(s)));
        }
    }

    #[test]
    fn induced_submultigraphs() {
        let outer = petersen().induced_submultigraph(VertexSet::from_vertices(0..5));
        assert_eq!(outer, cycle(5));
        let g = doubled_triangle();
        assert_eq!(g.induced_submultigraph(g.vertices()), g);
        assert_eq!(g.induced_submultigraph(VertexSet::EMPTY).n(), 0);
    }

    #[test]
    fn edge_deletion() {
        let mut f = EdgeSubset::new();
        f.add(1, 0, 1);
        assert_eq!(parallel_edge(3).delete_edges(&f).unwrap(), parallel_edge(2));

        let mut f = EdgeSubset::new();
        f.add(0, 2, 1);
        assert_eq!(complete(3).delete_edges(&f).unwrap(), path(3));

        assert_eq!(complete(3).delete_edges(&EdgeSubset::new()).unwrap(), complete(3));

        let mut f = EdgeSubset::new();
        f.add(0, 1, 2);
        assert!(matches!(
            complete(3).delete_edges(&f),
            Err(GraphError::SubsetExceedsMultiplicity { .. })
        ));
    }

    #[test]
    fn regularity() {
        assert!(petersen().is_regular());
        assert!(!path(3).is_regular());
        assert!(parallel_edge(3).is_regular());
    }

    #[test]
    fn serialization_is_sorted() {
        let g = Multigraph::from_edges(3, &[(2, 1, 1), (0, 2, 2), (1, 0, 1)]).unwrap();
        assert_eq!(g.to_text(), "n 3\ne 0 1 1\ne 0 2 2\ne 1 2 1\n");
    }
}
