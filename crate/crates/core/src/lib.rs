//! Exact algorithms around directed multicut with three terminal pairs.

mod combinatorics;
pub mod digraph;
pub mod error;
pub mod fixtures;
pub mod flowaug;
mod flownet;
pub mod gen;
pub mod io;
pub mod matrixgrid;
pub mod multicut;
pub mod permcsp;
pub mod pipeline;
pub mod reductions;
pub mod shadowrm;

pub use error::{Error, Result};
