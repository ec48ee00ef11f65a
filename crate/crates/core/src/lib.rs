//! Exact, finite-instance versions of the graph regularity method: edge
//! densities and energy, ε-regular pairs and partitions, the refinement
//! iteration, triangle counting and removal, and the tripartite graph built
//! from a set of residues whose triangles mirror its 3-term progressions.
//!
//! All quantities are exact rationals; nothing is compared in floating point.

pub mod energy;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod partition;
pub mod rational;
pub mod refinement;
pub mod regularity;
pub mod removal;
pub mod report;
pub mod roth;
pub mod tower;
pub mod triangles;

pub use error::{Error, Result};
pub use graph::{edge, Edge, EdgeSet, UGraph, VertexSet};
pub use partition::{PartSet, VertexPartition};
pub use rational::{parse_rational, ratio, ExactRational, Rational};
pub use regularity::{CheckerConfig, RegularityOutcome, Witness};
