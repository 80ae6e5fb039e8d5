pub mod audit;
pub mod census;
pub mod cli;
pub mod construct;
pub mod embedding;
pub mod geom;
pub mod graph;
pub mod solver;
pub mod verify;
