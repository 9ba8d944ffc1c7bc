//! Type cones of simplicial fans over exact rationals, with cluster,
//! gentle-quiver and graph-associahedron families.

pub mod cli;
pub mod cluster;
pub mod exactla;
pub mod fan;
pub mod gentle;
pub mod graph;
pub mod typecone;
