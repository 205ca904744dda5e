//! Structure toolkit for cubic multigraphs.
//!
//! The crate verifies structural facts about small cubic graphs: circuit and
//! breaker enumeration, small edge cuts and shores, planar embeddings with
//! apex and doublecross classification, Petersen subdivision search with
//! independently replayable witnesses, admissible edge weightings and circuit
//! covers, and an exhaustive catalog harness that drives all of the above
//! over graph6 catalog files.
//!
//! Everything is exact: searches either finish, return a checkable witness,
//! or report that a documented size or node budget was exceeded. No module
//! returns a heuristic answer.

#![forbid(unsafe_code)]

pub mod circuits;
pub mod containment;
pub mod cuts;
pub mod error;
pub mod graph;
pub mod planarity;

pub use error::{Error, Result};
pub use graph::{EdgeId, MultiGraph, VertexId};
