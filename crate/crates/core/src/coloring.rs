//! Proper edge colorings, the exact chromatic index, and realizability of a
//! palette assignment by an edge coloring.

use std::collections::BTreeMap;

use crate::error::{GraphError, ParseError};
use crate::invariants::coloring_lower_bound;
use crate::multigraph::Multigraph;
use crate::palette::{PaletteAssignment, MAX_COLORS};
use crate::search::{Budget, SearchOutcome, Ticker};

/// One of the `mult(u, v)` parallel edges between `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeInstance {
    pub u: usize,
    pub v: usize,
    pub copy: u32,
}

impl EdgeInstance {
    pub fn new(u: usize, v: usize, copy: u32) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        EdgeInstance { u, v, copy }
    }
}

/// Colors are `1..=c`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeColoring {
    pub c: usize,
    pub colors: BTreeMap<EdgeInstance, usize>,
}

impl EdgeColoring {
    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mask = self.colors.values().fold(0u64, |m, &c| m | 1u64 << (c - 1));
        mask.count_ones() as usize
    }

    /// One `c <u> <v> <copy> <color>` line per edge instance.
    pub fn to_text(&self) -> String {
        self.colors
            .iter()
            .map(|(e, color)| format!("c {} {} {} {}\n", e.u, e.v, e.copy, color))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut coloring = EdgeColoring::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let bad = || ParseError::Syntax {
                line,
                message: "expected `c <u> <v> <copy> <color>`".to_string(),
            };
            if fields.len() != 5 || fields[0] != "c" {
                return Err(bad());
            }
            let nums: Vec<usize> = fields[1..]
                .iter()
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if nums[0] == nums[1] {
                return Err(ParseError::Loop { line, vertex: nums[0] });
            }
            if nums[3] == 0 || nums[3] > MAX_COLORS {
                return Err(bad());
            }
            let e = EdgeInstance::new(nums[0], nums[1], nums[2] as u32);
            if coloring.colors.insert(e, nums[3]).is_some() {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("edge {}-{} copy {} colored twice", e.u, e.v, e.copy),
                });
            }
            coloring.c = coloring.c.max(nums[3]);
        }
        Ok(coloring)
    }
}

/// Edge instances sorted by decreasing endpoint-degree sum, ties by pair and
/// copy index.
pub fn edge_order(g: &Multigraph) -> Vec<EdgeInstance> {
    let degrees = g.degrees();
    let mut instances: Vec<EdgeInstance> = g
        .pairs()
        .flat_map(|(u, v, k)| (0..k).map(move |copy| EdgeInstance { u, v, copy }))
        .collect();
    instances.sort_by_key(|e| (std::cmp::Reverse(degrees[e.u] + degrees[e.v]), e.u, e.v, e.copy));
    instances
}

fn check_total(g: &Multigraph, col: &EdgeColoring) -> Result<(), GraphError> {
    for e in col.colors.keys() {
        if e.v >= g.n() || e.u == e.v || e.copy >= g.mult(e.u, e.v) {
            return Err(GraphError::InvalidColoring(format!(
                "edge {}-{} copy {} is not in the graph",
                e.u, e.v, e.copy
            )));
        }
    }
    if col.colors.len() != g.edge_count() {
        return Err(GraphError::InvalidColoring(format!(
            "{} of {} edges colored",
            col.colors.len(),
            g.edge_count()
        )));
    }
    if let Some((e, &c)) = col.colors.iter().find(|(_, &c)| c == 0 || c > col.c) {
        return Err(GraphError::InvalidColoring(format!(
            "edge {}-{} has color {c} outside 1..={}",
            e.u, e.v, col.c
        )));
    }
    Ok(())
}

/// True iff no two edge instances sharing a vertex have the same color.
/// Errors if the coloring is not total on `g` or mentions foreign edges.
pub fn is_proper(g: &Multigraph, col: &EdgeColoring) -> Result<bool, GraphError> {
    check_total(g, col)?;
    let mut seen = vec![0u64; g.n()];
    for (e, &color) in &col.colors {
        let bit = 1u64 << (color - 1);
        for x in [e.u, e.v] {
            if seen[x] & bit != 0 {
                return Ok(false);
            }
            seen[x] |= bit;
        }
    }
    Ok(true)
}

/// μ(x): colors on the edges at `x`. Rejects improper colorings.
pub fn palette(g: &Multigraph, col: &EdgeColoring) -> Result<PaletteAssignment, GraphError> {
    if !is_proper(g, col)? {
        return Err(GraphError::InvalidColoring("coloring is not proper".into()));
    }
    let mut sets = vec![0u64; g.n()];
    for (e, &color) in &col.colors {
        sets[e.u] |= 1 << (color - 1);
        sets[e.v] |= 1 << (color - 1);
    }
    Ok(PaletteAssignment::from_masks(col.c, sets))
}

/// Backtracking over edge instances in [`edge_order`].
struct EdgeSearch<'a> {
    order: &'a [EdgeInstance],
    c: usize,
    /// Per-instance candidate colors (bit `i` = color `i + 1`).
    allowed: Vec<u64>,
    /// Require colors in first-use order.
    break_color_symmetry: bool,
    used: Vec<u64>,
    remaining: Vec<usize>,
    assigned: Vec<usize>,
    ticker: Ticker,
}

impl<'a> EdgeSearch<'a> {
    fn new(g: &Multigraph, order: &'a [EdgeInstance], c: usize, allowed: Vec<u64>, budget: Budget) -> Self {
        EdgeSearch {
            order,
            c,
            allowed,
            break_color_symmetry: false,
            used: vec![0; g.n()],
            remaining: g.degrees(),
            assigned: vec![0; order.len()],
            ticker: Ticker::new(budget),
        }
    }

    /// Some(true) on success, Some(false) on exhaustion, None on timeout.
    fn run(&mut self) -> Option<bool> {
        for x in 0..self.used.len() {
            if self.remaining[x] > self.c {
                return Some(false);
            }
        }
        let found = self.extend(0, 0);
        if self.ticker.exhausted {
            None
        } else {
            Some(found)
        }
    }

    fn extend(&mut self, idx: usize, max_used: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        if !self.ticker.tick() {
            return false;
        }
        let e = self.order[idx];
        let mut candidates = self.allowed[idx] & !self.used[e.u] & !self.used[e.v];
        if self.break_color_symmetry {
            let limit = (max_used + 1).min(self.c);
            candidates &= crate::palette::color_range_mask(limit);
        }
        // Parallel copies are interchangeable: keep their colors increasing.
        if idx > 0 {
            let prev = self.order[idx - 1];
            if prev.u == e.u && prev.v == e.v {
                let prev_color = self.assigned[idx - 1];
                candidates &= !crate::palette::color_range_mask(prev_color);
            }
        }
        while candidates != 0 {
            let bit = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let mask = 1u64 << bit;
            self.used[e.u] |= mask;
            self.used[e.v] |= mask;
            self.remaining[e.u] -= 1;
            self.remaining[e.v] -= 1;
            let free_u = self.c - self.used[e.u].count_ones() as usize;
            let free_v = self.c - self.used[e.v].count_ones() as usize;
            if self.remaining[e.u] <= free_u && self.remaining[e.v] <= free_v {
                self.assigned[idx] = bit + 1;
                if self.extend(idx + 1, max_used.max(bit + 1)) {
                    return true;
                }
            }
            self.used[e.u] &= !mask;
            self.used[e.v] &= !mask;
            self.remaining[e.u] += 1;
            self.remaining[e.v] += 1;
            if self.ticker.exhausted {
                return false;
            }
        }
        false
    }

    fn coloring(&self) -> EdgeColoring {
        EdgeColoring {
            c: self.c,
            colors: self
                .order
                .iter()
                .copied()
                .zip(self.assigned.iter().copied())
                .collect(),
        }
    }
}

/// Tries to properly color `g` with `c` colors.
/// `Ok(None)` inside the result means the budget ran out.
pub fn color_with(
    g: &Multigraph,
    c: usize,
    budget: Budget,
) -> Result<(Option<Option<EdgeColoring>>, u64), GraphError> {
    if c > MAX_COLORS {
        return Err(GraphError::BoundExceeded {
            what: "edge coloring color count",
            actual: c,
            bound: MAX_COLORS,
        });
    }
    let order = edge_order(g);
    let all = crate::palette::color_range_mask(c);
    let mut search = EdgeSearch::new(g, &order, c, vec![all; order.len()], budget);
    search.break_color_symmetry = true;
    let result = search.run().map(|found| found.then(|| search.coloring()));
    Ok((result, search.ticker.nodes))
}

/// Exact χ'(G) with a witness. Searches `c` upward from max(Δ, ω) to the
/// Vizing bound Δ + p; if the first color count succeeds, the search at
/// `c - 1` is also run to certify optimality.
pub fn chromatic_index(
    g: &Multigraph,
    budget: Budget,
) -> Result<SearchOutcome<EdgeColoring>, GraphError> {
    let lower = coloring_lower_bound(g)?;
    let upper = g.max_degree() + g.max_multiplicity() as usize;
    let mut nodes = 0;
    for c in lower..=upper {
        let (result, n) = color_with(g, c, budget)?;
        nodes += n;
        match result {
            None => return Ok(SearchOutcome::Undecided { lower: c, upper, nodes }),
            Some(None) => continue,
            Some(Some(witness)) => {
                let optimality_certified = if c == lower && c > 0 {
                    let (below, n) = color_with(g, c - 1, budget)?;
                    nodes += n;
                    below == Some(None)
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
    Err(GraphError::InvalidColoring(format!(
        "no proper coloring with at most {upper} colors; Vizing's bound violated"
    )))
}

/// A proper coloring whose palette is exactly `mu`, if one exists.
/// Each edge `uv` draws from μ(u) ∩ μ(v).
pub fn exists_coloring_with_palette(
    g: &Multigraph,
    mu: &PaletteAssignment,
) -> Result<Option<EdgeColoring>, GraphError> {
    if mu.n() != g.n() {
        return Err(GraphError::DimensionMismatch {
            expected: g.n(),
            got: mu.n(),
        });
    }
    let order = edge_order(g);
    let allowed = order.iter().map(|e| mu.mask(e.u) & mu.mask(e.v)).collect();
    let mut search = EdgeSearch::new(g, &order, mu.colors_count(), allowed, Budget::unlimited());
    if search.run() != Some(true) {
        return Ok(None);
    }
    let col = search.coloring();
    // Properness alone could leave part of some μ(x) unused.
    if palette(g, &col)? == *mu {
        Ok(Some(col))
    } else {
        Ok(None)
    }
}
