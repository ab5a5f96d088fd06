//! Exact TS(u -> v; F) solvers: subset DP on a metric closure, the tree
//! closed form, the free-product petal recursion, and a brute-force oracle.

mod exact;
mod oracle;
mod petal;
mod tree;

pub use exact::{
    check_walk, shortest_path, solve_exact, ts_to_all, TspInstance, TspSolution, MAX_REQUIRED,
};
pub use oracle::brute_force_oracle;
pub use petal::{ts_free_product, Petal, PetalDecomposition, PetalSolver};
pub use tree::ts_tree;
