pub mod analysis;
pub mod bias;
pub mod census;
pub mod cli;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod frame;
pub mod iso;
pub mod limits;
pub mod multigraph;
pub mod sets;
pub mod transforms;
mod realize;
mod uf;

pub use error::{Error, Result};
pub use frame::{circuits, has_u24_minor, is_graphic_bruteforce, matroid_equal, matroid_isomorphic, CircuitKind, Matroid, U24Witness};
pub use bias::{BiasedGraph, Signature, UnbalancingPartition};
pub use multigraph::{Connectivity, Cycle, MultiGraph, Path, RerouteStep, Separation, Theta};
pub use sets::{EdgeId, EdgeSet, VertexId, VertexSet};
