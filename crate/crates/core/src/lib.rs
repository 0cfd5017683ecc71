//! Exact point-set embeddings of planar graphs with a bounded number of bends.
//!
//! The pipeline goes through a two-page topological book embedding, splits
//! the spine order into monotone chains along a generic direction, and routes
//! every edge through a snake of parallel line bundles. All coordinates are
//! exact rationals, and [`geomcheck`] verifies every drawing exactly.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod book;
pub mod chains;
pub mod geomcheck;
pub mod graph;
pub mod rng;
pub mod route;
pub mod stats;

pub use book::{book_embed, gamma_sequence, validate_book, BookEmbedding, BookError, Page};
pub use chains::{
    alternating_runs, brute_force_cover, generic_direction, interleave_empty,
    min_common_chain_cover, ChainError, ChainPartition, Direction,
};
pub use geomcheck::{count_bends, orient, segments_intersect, verify_drawing, Orientation, RationalPoint};
pub use graph::{planar_embed, triangulate, GraphError, PlanarGraph, PointSet, RotationSystem};
pub use route::{draw_fixed, route, simul_embed, Drawing, PointConfig, RouteError, C_ROUTE};
pub use stats::{
    bends_experiment, chain_scaling_experiment, lower_bound_eval, runs_exhaustive, runs_experiment,
    ExperimentReport, StatsError,
};
