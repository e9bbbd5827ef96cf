//! Edge-connectivity kernels, lifting theory, and k-arc-connected orientations of finite
//! multigraphs and of finite exhaustions of locally finite graphs.

pub mod connectivity;
pub mod corpus;
pub mod error;
pub mod infinite;
pub mod lifting;
mod flow;
pub mod multigraph;
pub mod orientation;

pub use connectivity::FlowCertificate;
pub use error::{Error, Result};
pub use multigraph::{
    Arc, Cut, EdgeId, EdgeSet, GraphDocument, Multigraph, Orientation, VertexId, VertexSet,
};
