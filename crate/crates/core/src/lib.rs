//! Liar's domination on unit disk graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: exact fixed-point coordinates and unit disk graph construction.
//! * [`graph`]: simple graphs, vertex sets and the dominating / liar's dominating verifiers.
//! * [`embedding`]: orthogonal grid embeddings of planar max-degree-3 graphs.
//! * [`reduction`]: the gadget construction turning an embedded graph into a unit disk graph.
//! * [`solvers`]: exact and heuristic solvers for both domination problems.
//! * [`theorem`]: both directions of the size correspondence, checked on concrete instances.
//! * [`formats`], [`render`], [`gen`]: text file formats, SVG output and seeded generators.
//!
//! All coordinates are integers in deci-units (a tenth of the disk diameter), so
//! adjacency is an exact integer comparison against [`geometry::UNIT_SQ`].

mod bits;
pub mod embedding;
pub mod error;
pub mod formats;
pub mod gen;
pub mod geometry;
pub mod graph;
pub mod reduction;
pub mod render;
pub mod solvers;
pub mod theorem;

pub use embedding::{
    decompose_steps, embed_graph, total_segments, validate_embedding, GridEmbedding,
    StepDecomposition,
};
pub use error::{Error, Result};
pub use geometry::{are_adjacent, build_udg, sq_dist, Coord, PointKind, PointRecord, UdgInstance};
pub use graph::{
    is_dominating, is_liars_dominating, liars_feasible, SimpleGraph, VerifyReport, VertexSet,
};
pub use reduction::{check_separation, reduce, Origin, Reduction, ReductionMap};
pub use solvers::{Budget, Problem, SolveResult, Status};
pub use theorem::{theorem_check, TheoremReport};
