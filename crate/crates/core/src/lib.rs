//! Kauffman state lattices of knot universes and the clock number.
//!
//! A [`Universe`] is parsed from a crossing code, states are enumerated for a
//! pair of adjacent starred faces, and [`lattice::build_lattice`] joins them
//! by clock transpositions. The lattice height, minimised over star
//! placements, bounds the clock number from above.

pub mod alexpoly;
pub mod clocknum;
pub mod diagram;
pub mod generators;
pub mod lattice;
pub mod states;
pub mod suites;
pub mod verdict;

pub use diagram::{
    parse_diagram, BoundaryClassification, Corner, Dart, Diagram, DiagramError, EdgeId, FaceId,
    FaceStats, Properness, SplitWitness, StarPlacement, Universe, VertexId,
};
pub use lattice::{build_lattice, Lattice};
pub use states::{ClockMove, Direction, State};
