pub mod fed;
pub mod game;
pub mod graph;
pub mod lp;
pub mod rat;
pub mod reconfig;

pub use graph::{ClassTag, Family, Graph, GraphError, VertexSet};
pub use rat::{rat, Rat};
