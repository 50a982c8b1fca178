//! Four-coloring Eulerian triangulations of the torus.

pub mod cayley;
pub mod cli;
pub mod disjoint_cycles;
pub mod embedding;
pub mod homotopy;
pub mod error;
pub mod four_color;
pub mod lattice;
pub mod planar_color;
pub mod schrijver_geometry;
pub mod torus_map;
pub mod walk_types;

pub use error::{Error, Result};
