//! Hamiltonian paths, spanning walks of grids and related invariants.

mod analyze;
mod cube3;
mod difference;
mod grid;
mod nash_williams;
mod path;
mod qh;
mod rect;

pub use analyze::{analyze, HamiltonicityReport};
pub use cube3::cube3_hamiltonian_path;
pub use difference::{hamiltonian_difference, HamiltonianDifference, MAX_ORDER};
pub use grid::{cube_spanning_path, grid_spanning_path, snake, snake_inverse};
pub use nash_williams::{nash_williams_basis, NashWilliamsBasis};
pub use path::{hamiltonian_path, DP_LIMIT, SEARCH_LIMIT};
pub use qh::{
    qh_certificate, qh_refutation, verify_certificate, ExcessRow, QhCertificate, QhStrategy,
    QhWitness,
};
