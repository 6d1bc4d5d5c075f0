//! Desk-scale algorithms around α-maximal graphs and hypergraphs.
//!
//! The crate is organised by subsystem:
//!
//! - [`graph`]: simple and properly edge-colored graphs with the neighborhood
//!   primitives used everywhere else.
//! - [`density`]: α-maximal subgraph extraction (exact and peeling) and the
//!   expansion checks that α-maximal graphs satisfy.
//! - [`rainbow`]: sprinkled sampling, `(U,Q)`-path reachability and the
//!   rainbow cycle / subdivision finders.
//! - [`hypergraph`]: r-uniform hypergraphs viewed as pure simplicial complexes.
//! - [`topo`]: higher-order walks, paths and cycles of (r−1)-faces, surface
//!   classification and the path/cycle finders built on them.
//! - [`constructions`]: explicit extremal constructions and the hypercube
//!   representation of cycles.
//! - [`mc`]: Monte Carlo estimators for the concentration bounds.
//! - [`io`]: text and JSON formats.

pub mod constructions;
pub mod density;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod mc;
pub mod rainbow;
pub mod rng;
pub mod topo;

pub use density::{DensityScore, ExtractMode};
pub use error::{Error, Result};
pub use graph::{Color, ColoredGraph, ForbiddenMap, SimpleGraph, Vertex};
pub use hypergraph::{Face, FaceSet, RGraph};
pub use rainbow::{SampleConfig, SubdivisionCert};
pub use topo::{FaceCycleCert, FacePathCert, FaceWalk, Surface, WalkClass};
