//! Per-vertex color sets μ(x) ⊆ [1..c].

use std::fmt;

use crate::error::ParseError;
use crate::multigraph::VertexSet;

pub const MAX_COLORS: usize = 64;

/// Color `i` (1-based) is bit `i - 1` of a vertex's mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PaletteAssignment {
    c: usize,
    sets: Vec<u64>,
}

impl PaletteAssignment {
    /// Panics if `c > MAX_COLORS` or a mask uses colors above `c`.
    pub fn from_masks(c: usize, sets: Vec<u64>) -> Self {
        assert!(c <= MAX_COLORS, "at most {MAX_COLORS} colors");
        let allowed = color_range_mask(c);
        assert!(sets.iter().all(|&s| s & !allowed == 0), "color outside 1..={c}");
        PaletteAssignment { c, sets }
    }

    pub fn from_sets(c: usize, sets: &[Vec<usize>]) -> Self {
        let masks = sets
            .iter()
            .map(|colors| {
                colors.iter().fold(0u64, |m, &i| {
                    assert!((1..=c).contains(&i), "color {i} outside 1..={c}");
                    m | 1 << (i - 1)
                })
            })
            .collect();
        Self::from_masks(c, masks)
    }

    /// Every vertex receives all of `1..=c`.
    pub fn uniform(n: usize, c: usize) -> Self {
        Self::from_masks(c, vec![color_range_mask(c); n])
    }

    pub fn colors_count(&self) -> usize {
        self.c
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn mask(&self, x: usize) -> u64 {
        self.sets[x]
    }

    pub fn masks(&self) -> &[u64] {
        &self.sets
    }

    pub fn set_size(&self, x: usize) -> usize {
        self.sets[x].count_ones() as usize
    }

    pub fn contains(&self, x: usize, color: usize) -> bool {
        (1..=self.c).contains(&color) && self.sets[x] >> (color - 1) & 1 == 1
    }

    /// Colors of `x` in ascending order.
    pub fn colors(&self, x: usize) -> impl Iterator<Item = usize> {
        let mut bits = self.sets[x];
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i + 1
            })
        })
    }

    /// S^(i)(μ): vertices of `s` whose set contains color `i`.
    pub fn color_class(&self, s: VertexSet, color: usize) -> VertexSet {
        VertexSet::from_vertices(s.iter().filter(|&x| x < self.n() && self.contains(x, color)))
    }

    /// V^(i) for every color `1..=c`, as vertex masks indexed by `i - 1`.
    pub fn class_masks(&self) -> Vec<u64> {
        let mut classes = vec![0u64; self.c];
        for (x, &set) in self.sets.iter().enumerate() {
            let mut bits = set;
            while bits != 0 {
                classes[bits.trailing_zeros() as usize] |= 1 << x;
                bits &= bits - 1;
            }
        }
        classes
    }

    /// `c <count>` then one `v <x>: <colors>` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("c {}\n", self.c);
        for x in 0..self.n() {
            out.push_str(&format!("v {x}:"));
            for color in self.colors(x) {
                out.push_str(&format!(" {color}"));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Every vertex `0..k` must appear exactly once.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut c: Option<usize> = None;
        let mut entries: Vec<Option<u64>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("c ") {
                if c.is_some() {
                    return Err(syntax(line, "duplicate `c` header"));
                }
                let count: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, "expected `c <count>`"))?;
                if count > MAX_COLORS {
                    return Err(syntax(line, &format!("at most {MAX_COLORS} colors supported")));
                }
                c = Some(count);
            } else if let Some(rest) = trimmed.strip_prefix("v ") {
                let count = c.ok_or(ParseError::MissingHeader)?;
                let (vertex, colors) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `v <x>: <colors>`"))?;
                let x: usize = vertex
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, &format!("bad vertex `{}`", vertex.trim())))?;
                if x >= crate::multigraph::MAX_VERTICES {
                    return Err(syntax(line, "vertex index too large"));
                }
                let mut mask = 0u64;
                for tok in colors.split_whitespace() {
                    let color: usize = tok
                        .parse()
                        .map_err(|_| syntax(line, &format!("bad color `{tok}`")))?;
                    if !(1..=count).contains(&color) {
                        return Err(syntax(line, &format!("color {color} outside 1..={count}")));
                    }
                    if mask >> (color - 1) & 1 == 1 {
                        return Err(syntax(line, &format!("color {color} repeated")));
                    }
                    mask |= 1 << (color - 1);
                }
                if entries.len() <= x {
                    entries.resize(x + 1, None);
                }
                if entries[x].replace(mask).is_some() {
                    return Err(syntax(line, &format!("vertex {x} listed twice")));
                }
            } else {
                return Err(syntax(line, "expected `c <count>` or `v <x>: <colors>`"));
            }
        }
        let c = c.ok_or(ParseError::MissingHeader)?;
        let sets = entries
            .into_iter()
            .enumerate()
            .map(|(x, m)| {
                m.ok_or_else(|| ParseError::Syntax {
                    line: 0,
                    message: format!("vertex {x} missing"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PaletteAssignment { c, sets })
    }
}

fn syntax(line: usize, message: &str) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.to_string(),
    }
}

pub(crate) fn color_range_mask(c: usize) -> u64 {
    if c >= 64 {
        u64::MAX
    } else {
        (1u64 << c) - 1
    }
}

impl fmt::Debug for PaletteAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Palette(c={}", self.c)?;
        for x in 0..self.n() {
            write!(f, " {x}:{:?}", self.colors(x).collect::<Vec<_>>())?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_classes() {
        let all = PaletteAssignment::uniform(3, 2);
        assert_eq!(all.color_class(VertexSet::full(3), 1), VertexSet::full(3));
        assert_eq!(all.color_class(VertexSet::EMPTY, 1), VertexSet::EMPTY);
        let p3 = PaletteAssignment::from_sets(2, &[vec![1], vec![1, 2], vec![2]]);
        assert_eq!(
            p3.color_class(VertexSet::full(3), 2),
            VertexSet::from_vertices([1, 2])
        );
        assert_eq!(p3.class_masks(), vec![0b011, 0b110]);
    }

    #[test]
    fn text_round_trip() {
        let mu = PaletteAssignment::from_sets(3, &[vec![1, 2], vec![1, 3], vec![], vec![2, 3]]);
        let text = mu.to_text();
        assert_eq!(text, "c 3\nv 0: 1 2\nv 1: 1 3\nv 2:\nv 3: 2 3\n");
        assert_eq!(PaletteAssignment::parse(&text).unwrap(), mu);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(PaletteAssignment::parse("v 0: 1").is_err());
        assert!(PaletteAssignment::parse("c 2\nv 0: 3").is_err());
        assert!(PaletteAssignment::parse("c 2\nv 0: 1 1").is_err());
        assert!(PaletteAssignment::parse("c 2\nv 1: 1").is_err());
        assert!(PaletteAssignment::parse("c 2\nv 0: 1\nv 0: 2").is_err());
        assert!(PaletteAssignment::parse("c 2\nq").is_err());
    }
}
