//! Cut&Count parity algorithms for connectivity problems on graphs of bounded treewidth.

pub mod algebra;
pub mod decomposition;
pub mod edge;
pub mod engine;
pub mod error;
pub mod fpt;
pub mod graph;
pub mod hardgen;
pub mod oracle;
pub mod problem;
pub mod sample;
pub mod vertex;
