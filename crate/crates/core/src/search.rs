use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Wall-clock limit for one solver call.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(secs: u64) -> Self {
        Self::from_duration(Duration::from_secs(secs))
    }

    pub fn from_duration(limit: Duration) -> Self {
        Budget {
            deadline: Instant::now().checked_add(limit),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Counts search nodes and polls the budget every few thousand of them.
pub(crate) struct Ticker {
    budget: Budget,
    pub nodes: u64,
    pub exhausted: bool,
}

impl Ticker {
    pub fn new(budget: Budget) -> Self {
        Ticker {
            budget,
            nodes: 0,
            exhausted: false,
        }
    }

    /// Returns false once the budget has run out.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.budget.expired() {
            self.exhausted = true;
        }
        !self.exhausted
    }
}

/// Result of an exact minimisation over color counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<W> {
    Exact {
        value: usize,
        witness: W,
        /// The search at `value - 1` ran to completion without a solution.
        optimality_certified: bool,
        nodes: u64,
    },
    Undecided {
        lower: usize,
        upper: usize,
        nodes: u64,
    },
}

impl<W> SearchOutcome<W> {
    pub fn value(&self) -> Option<usize> {
        match self {
            SearchOutcome::Exact { value, .. } => Some(*value),
            SearchOutcome::Undecided { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            SearchOutcome::Exact { witness, .. } => Some(witness),
            SearchOutcome::Undecided { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Exact { nodes, .. } | SearchOutcome::Undecided { nodes, .. } => *nodes,
        }
    }

    pub fn bound(&self) -> Bound {
        match self {
            SearchOutcome::Exact { value, .. } => Bound::Exact(*value),
            SearchOutcome::Undecided { lower, upper, .. } => Bound::Undecided {
                lower: *lower,
                upper: *upper,
            },
        }
    }
}

/// Serialized form of a possibly undecided value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exact(usize),
    Undecided { lower: usize, upper: usize },
}

impl Bound {
    pub fn exact(self) -> Option<usize> {
        match self {
            Bound::Exact(v) => Some(v),
            Bound::Undecided { .. } => None,
        }
    }

    pub fn lower(self) -> usize {
        match self {
            Bound::Exact(v) => v,
            Bound::Undecided { lower, .. } => lower,
        }
    }

    pub fn upper(self) -> usize {
        match self {
            Bound::Exact(v) => v,
            Bound::Undecided { upper, .. } => upper,
        }
    }
}

/// Outcome of a search for a single object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Found<T> {
    Yes(T),
    No,
    Undecided,
}

/// All `size`-subsets of `0..c` as bitmasks, in lexicographic order of
/// their sorted element lists.
pub(crate) fn combinations(c: usize, size: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(size);
    fn go(start: usize, c: usize, size: usize, chosen: &mut Vec<usize>, out: &mut Vec<u64>) {
        if chosen.len() == size {
            out.push(chosen.iter().fold(0, |m, &i| m | 1u64 << i));
            return;
        }
        for i in start..c {
            if c - i < size - chosen.len() {
                break;
            }
            chosen.push(i);
            go(i + 1, c, size, chosen, out);
            chosen.pop();
        }
    }
    if size <= c {
        go(0, c, size, &mut chosen, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_lex_order() {
        assert_eq!(combinations(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(combinations(4, 0), vec![0]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(6, 3).len(), 20);
    }

    #[test]
    fn unlimited_budget_never_expires() {
        let mut t = Ticker::new(Budget::unlimited());
        for _ in 0..10_000 {
            assert!(t.tick());
        }
        assert!(Budget::from_duration(Duration::ZERO).expired());
    }
}
