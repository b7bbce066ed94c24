pub mod boundary;
pub mod cli;
pub mod dpo;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod lawcheck;
pub mod matcher;
pub mod morphism;
pub mod rotation;
