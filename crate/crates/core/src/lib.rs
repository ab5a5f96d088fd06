//! Word metrics, dead ends and Hamiltonian invariants of lamplighter groups.

pub mod error;
pub mod graphs;
pub mod groups;
pub mod hamiltonian;
pub mod limits;
pub mod tsp;
pub mod wreath;

pub use error::{Error, Result};
pub use limits::Limits;
