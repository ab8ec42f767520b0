//! Graphs shared by the solver benchmarks.

use degcolor_core::named::*;
use degcolor_core::Multigraph;

pub fn solver_inputs() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("c5", cycle(5)),
        ("k4", complete(4)),
        ("doubled_triangle", doubled_triangle()),
        ("prism", prism()),
        ("petersen", petersen()),
        ("multicycle_6", multicycle(&[3, 1, 2, 3, 1, 2])),
    ]
}
