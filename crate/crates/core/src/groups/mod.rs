//! Group models: finite tables, finitely generated abelian groups, free groups
//! and free products of two finite groups.

mod lattice;
mod model;
mod spec;
mod table;

pub use lattice::Lattice;
pub use model::{
    abelian_index_coords, AbelianGroup, AbelianVec, FiniteGroup, GroupElement, GroupModel, Letter,
    Side,
};
pub use spec::GroupSpec;
pub use table::FiniteGroupTable;
