//! Constructive list colouring of planar graphs from lists of four colours
//! whose adjacent lists share at most two colours.

pub mod batch;
pub mod gen;
pub mod graph;
pub mod io;
pub mod lists;
pub mod oracle;
pub mod solver;
