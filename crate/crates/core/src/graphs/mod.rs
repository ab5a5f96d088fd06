//! Finite graphs: Cayley balls, finite Cayley graphs, powers, products, cubes.

mod ball;
mod graph;

pub use ball::{cayley_ball, cayley_ball_around, CayleyBall};
pub use graph::{
    cube_coords, cube_graph, cube_index, finite_cayley_graph, power_graph, product_graph,
    FiniteGraph, VertexLabel, UNREACHABLE,
};
