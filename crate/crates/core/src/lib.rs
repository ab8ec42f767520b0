//! Exact multigraph edge-coloring invariants: density ω, matching density
//! ω*, chromatic index χ', and the degree-coloring index τ, plus a harness
//! that checks the known bounds and the open conjectures about τ over
//! exhaustively enumerated small multigraphs.

pub mod canon;
pub mod coloring;
pub mod degree;
pub mod error;
pub mod harness;
pub mod invariants;
pub mod matching;
pub mod multigraph;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod palette;
pub mod regularize;
pub mod search;

pub use canon::{canonical_form, enumerate_multigraphs, CanonicalKey, EnumerationBounds};
pub use coloring::{
    chromatic_index, exists_coloring_with_palette, is_proper, palette, EdgeColoring, EdgeInstance,
};
pub use degree::{
    check_cover_condition, check_degree_condition, check_matching_condition,
    find_unrealizable_degree_coloring, is_degree_coloring, tau, tau_regular_shortcut,
    CoverViolation,
};
pub use error::{GraphError, ParseError, ReportError, ScanError};
pub use invariants::{
    coloring_lower_bound, density, fractional_chromatic_index, omega_star, DensityWitness,
    OmegaStarWitness,
};
pub use matching::{maximum_matching, pi};
pub use multigraph::{named, EdgeSubset, Multigraph, VertexSet};
pub use palette::PaletteAssignment;
pub use regularize::{regularize, verify_regularization, RegularizationResult};
pub use search::{Bound, Budget, Found, SearchOutcome};
