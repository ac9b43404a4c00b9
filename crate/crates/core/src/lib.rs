//! Exact computations around quantum symmetries of finite graphs: graph families,
//! automorphism orbits on tuples, planar diagram intertwiners, the 4-box algebra,
//! rational span certificates for the flip, and quantum-graph identities for the
//! affine polar graphs.

pub mod bitset;
pub mod boxalg;
pub mod certify;
pub mod diagram;
pub mod graph;
pub mod linalg;
pub mod qgraph;
pub mod symmetry;
pub mod vector;

pub use graph::{Graph, GraphError, Provenance};
