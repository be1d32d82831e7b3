//! Morse clustering of weighted graphs.
//!
//! The crate provides the Morse flow and partition over pluggable vertex and
//! edge preorders ([`morse`], [`preorder`]), expansive maps and monotonic
//! transformations of distances ([`monotonic`]), an executable harness for
//! the clustering axioms ([`axioms`]) and a planted-partition benchmark with
//! NMI scoring ([`eval`]).
//!
//! Vertices are `0..n` in the API. Files and JSON use 1-based labels.

pub mod axioms;
pub mod error;
pub mod eval;
pub mod graph;
pub mod instance;
pub mod io;
pub mod monotonic;
pub mod morse;
pub mod partition;
pub mod preorder;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{ExtremalStats, Graph, Neighbor, PseudoDistance};
pub use instance::MorseInstance;
pub use monotonic::ExpansiveMap;
pub use morse::{morse_flow, morse_partition, MorseClustering, MorseFlow, MorseForest};
pub use partition::Partition;
pub use preorder::{EdgePreorder, Relation, VertexPreorder};
