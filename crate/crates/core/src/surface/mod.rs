//! Ideal triangulations of punctured surfaces and the flip move.

mod fixtures;
mod triangulation;

pub use fixtures::{fixture, fixture_names, FIXTURE_NAMES};
pub use triangulation::{
    FlipRecord, Isomorphism, SignedEdge, SurfaceSig, Triangulation, TriangulationSpec,
};
pub(crate) use triangulation::check_permutation;
