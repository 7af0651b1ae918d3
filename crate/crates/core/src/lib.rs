//! Reeb digraphs, the surgeries that combine them, and a desk-scale PL
//! engine that realizes them as height functions on triangulated closed
//! surfaces.
//!
//! The crate is organized around three layers:
//!
//! * [`digraph`] / [`iso`] — the combinatorial data model: finite connected
//!   directed multigraphs with optional exact rational heights, validity
//!   checking, and multigraph isomorphism.
//! * [`surgery`] — wedge connected sums, critical-point count bookkeeping,
//!   embedding checks, and degree-2 vertex augmentation on tree hosts.
//! * [`mesh`] / [`plmorse`] / [`sweep`] / [`realize`] / [`consum`] — the PL
//!   side: triangulated closed surfaces with rational heights, critical
//!   vertex classification from lower/upper links, a level-set sweep that
//!   computes Reeb digraphs, realization of good digraphs as surfaces, and
//!   the simplicial connected-sum surgery.
//!
//! All arithmetic is exact; there are no tolerance parameters anywhere.

pub mod consum;
pub mod digraph;
pub mod error;
pub mod gen;
pub mod io;
pub mod iso;
pub mod mesh;
pub mod plmorse;
pub mod rational;
pub mod realize;
pub mod surgery;
pub mod sweep;

pub use digraph::{EdgeId, PointSpec, ReebDigraph, ValidityReport, VertexId, Violation};
pub use error::{ConsumError, GraphError, MeshError, SurgeryError};
pub use iso::Isomorphism;
pub use mesh::{MeshVertexId, PlHeights, TriSurface};
pub use plmorse::VertexClass;
pub use surgery::{CriticalSplit, EmbeddingMap, GsAnnotation};
pub use sweep::SweepOutput;
