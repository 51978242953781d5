//! Exact zero forcing and propagation time computations on small graphs.
//!
//! The crate is organised bottom-up: [`graph`] holds the graph type,
//! graph6 I/O and fixture families; [`forcing`] the colour-change engine;
//! [`search`] the exhaustive searches for `Z(G)`, `pt(G)`, `PT(G)` and
//! efficient sets; [`characterize`] structural recognisers; [`nullity`]
//! exact-rational maximum-nullity witnesses; [`corpus`] small-graph
//! enumeration and [`verify`] the theorem suites run over corpora.

pub mod characterize;
pub mod corpus;
pub mod error;
pub mod forcing;
pub mod graph;
pub mod nullity;
pub mod search;
pub mod verify;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use vertex_set::VertexSet;
