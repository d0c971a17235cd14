pub mod certificate;
pub mod cli;
pub mod dimacs;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod planarity;
pub mod solver;
