//! Brute-force canonical labelling and isomorphism-free enumeration.
//!
//! The canonical key of a graph is the lexicographically smallest
//! upper-triangular multiplicity sequence over all `n!` relabellings, so the
//! vertex count is capped at [`ENUMERATION_MAX_VERTICES`].

use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::multigraph::Multigraph;

pub const ENUMERATION_MAX_VERTICES: usize = 8;

/// Ordered by vertex count, then lexicographically by multiplicities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalKey {
    n: usize,
    entries: Vec<u32>,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_graph(&self) -> Multigraph {
        Multigraph::from_upper_triangle(self.n, &self.entries).expect("key within vertex bound")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.entries.iter().join(","))
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

impl From<CanonicalKey> for String {
    fn from(key: CanonicalKey) -> String {
        key.to_string()
    }
}

impl TryFrom<String> for CanonicalKey {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        let (n, rest) = s.split_once(':').ok_or_else(|| format!("bad key `{s}`"))?;
        let n: usize = n.parse().map_err(|_| format!("bad key `{s}`"))?;
        let entries: Vec<u32> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|t| t.parse().map_err(|_| format!("bad key `{s}`")))
                .collect::<Result<_, _>>()?
        };
        if n > ENUMERATION_MAX_VERTICES || entries.len() != n * n.saturating_sub(1) / 2 {
            return Err(format!("bad key `{s}`"));
        }
        Ok(CanonicalKey { n, entries })
    }
}

/// Each permutation lists, for new label `i`, the old vertex placed there.
fn permutations(n: usize) -> &'static [Vec<u8>] {
    static CACHE: [OnceLock<Vec<Vec<u8>>>; ENUMERATION_MAX_VERTICES + 1] =
        [const { OnceLock::new() }; ENUMERATION_MAX_VERTICES + 1];
    CACHE[n].get_or_init(|| (0..n as u8).permutations(n).collect())
}

fn check_bound(n: usize) -> Result<(), GraphError> {
    if n > ENUMERATION_MAX_VERTICES {
        return Err(GraphError::BoundExceeded {
            what: "canonical labelling",
            actual: n,
            bound: ENUMERATION_MAX_VERTICES,
        });
    }
    Ok(())
}

pub fn canonical_form(g: &Multigraph) -> Result<CanonicalKey, GraphError> {
    let n = g.n();
    check_bound(n)?;
    let mut best = g.upper_triangle();
    let mut scratch = vec![0u32; best.len()];
    for perm in permutations(n) {
        let mut idx = 0;
        let mut smaller = false;
        'perm: for i in 0..n {
            for j in i + 1..n {
                let k = g.mult(perm[i] as usize, perm[j] as usize);
                if !smaller {
                    if k > best[idx] {
                        break 'perm;
                    }
                    if k < best[idx] {
                        smaller = true;
                    }
                }
                scratch[idx] = k;
                idx += 1;
            }
        }
        if smaller {
            best.copy_from_slice(&scratch);
        }
    }
    Ok(CanonicalKey { n, entries: best })
}

/// True iff `entries` is already the canonical sequence of its graph.
fn is_canonical(n: usize, entries: &[u32], table: &mut [u32]) -> bool {
    let mut idx = 0;
    for u in 0..n {
        for v in u + 1..n {
            table[u * n + v] = entries[idx];
            table[v * n + u] = entries[idx];
            idx += 1;
        }
    }
    for perm in permutations(n) {
        let mut idx = 0;
        'perm: for i in 0..n {
            for j in i + 1..n {
                let k = table[perm[i] as usize * n + perm[j] as usize];
                if k < entries[idx] {
                    return false;
                }
                if k > entries[idx] {
                    break 'perm;
                }
                idx += 1;
            }
        }
    }
    true
}

pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> Result<bool, GraphError> {
    Ok(a.n() == b.n() && canonical_form(a)? == canonical_form(b)?)
}

/// Bounds for [`enumerate_multigraphs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub max_vertices: usize,
    pub max_mult: u32,
    pub max_edges: usize,
}

/// Streams one representative per isomorphism class of loopless multigraphs
/// with `1..=max_vertices` vertices, multiplicities at most `max_mult` and at
/// most `max_edges` edges, in canonical-key order.
pub fn enumerate_multigraphs(bounds: EnumerationBounds) -> Result<Enumeration, GraphError> {
    check_bound(bounds.max_vertices)?;
    if bounds.max_vertices == 0 {
        return Err(GraphError::BoundExceeded {
            what: "enumeration with zero vertices",
            actual: 0,
            bound: 1,
        });
    }
    Ok(Enumeration {
        bounds,
        n: 1,
        entries: Vec::new(),
        sum: 0,
        table: vec![0; 1],
        started: false,
    })
}

pub struct Enumeration {
    bounds: EnumerationBounds,
    n: usize,
    entries: Vec<u32>,
    sum: usize,
    table: Vec<u32>,
    started: bool,
}

impl Enumeration {
    /// Advances to the lexicographic successor within the bounds.
    fn advance(&mut self) -> bool {
        for i in (0..self.entries.len()).rev() {
            if self.entries[i] < self.bounds.max_mult && self.sum < self.bounds.max_edges {
                self.entries[i] += 1;
                self.sum += 1;
                return true;
            }
            self.sum -= self.entries[i] as usize;
            self.entries[i] = 0;
        }
        false
    }

    fn next_candidate(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        if self.advance() {
            return true;
        }
        if self.n >= self.bounds.max_vertices {
            return false;
        }
        self.n += 1;
        self.entries = vec![0; self.n * (self.n - 1) / 2];
        self.sum = 0;
        self.table = vec![0; self.n * self.n];
        true
    }
}

impl Iterator for Enumeration {
    type Item = Multigraph;

    fn next(&mut self) -> Option<Multigraph> {
        while self.next_candidate() {
            if is_canonical(self.n, &self.entries, &mut self.table) {
                return Some(
                    Multigraph::from_upper_triangle(self.n, &self.entries)
                        .expect("within vertex bound"),
                );
            }
        }
        None
    }
}
