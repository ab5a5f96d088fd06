use std::collections::HashMap;

use super::graph::{FiniteGraph, VertexLabel};
use crate::error::{invalid, resource, Result};
use crate::groups::{GroupElement, GroupModel};
use crate::limits::Limits;

/// The ball B(center, radius) in a Cayley graph, materialized as an induced
/// subgraph. Vertices are numbered in BFS discovery order, generator order
/// breaking ties.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub graph: FiniteGraph,
    pub center: GroupElement,
    pub radius: u32,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    layer: Vec<u32>,
}

impl CayleyBall {
    pub fn element_of(&self, v: usize) -> &GroupElement {
        &self.elements[v]
    }

    pub fn vertex_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Distance of vertex `v` from the center.
    pub fn layer(&self, v: usize) -> u32 {
        self.layer[v]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the ball is the whole (finite) group: no generator leaves it.
    pub fn is_saturated(&self) -> bool {
        self.layer.iter().all(|&d| d < self.radius)
    }
}

/// B(e, radius).
pub fn cayley_ball(model: &GroupModel, radius: u32, limits: &Limits) -> Result<CayleyBall> {
    cayley_ball_around(model, &model.identity(), radius, limits)
}

pub fn cayley_ball_around(
    model: &GroupModel,
    center: &GroupElement,
    radius: u32,
    limits: &Limits,
) -> Result<CayleyBall> {
    model.check(center)?;
    let gens = model.generators();
    if gens.is_empty() && model.order() != Some(1) {
        return Err(invalid("model has no generators"));
    }
    let mut elements = vec![center.clone()];
    let mut index = HashMap::from([(center.clone(), 0usize)]);
    let mut layer = vec![0u32];
    let mut edges = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let d = layer[head];
        for s in &gens {
            let y = model.multiply(&elements[head], s)?;
            match index.get(&y) {
                Some(&w) => edges.push((head, w)),
                None if d < radius => {
                    if elements.len() >= limits.vertex_cap {
                        return Err(resource(
                            format!("Cayley ball of radius {radius}"),
                            limits.vertex_cap,
                        ));
                    }
                    let w = elements.len();
                    index.insert(y.clone(), w);
                    elements.push(y);
                    layer.push(d + 1);
                    edges.push((head, w));
                }
                None => {}
            }
        }
        head += 1;
    }
    let labels = elements.iter().cloned().map(VertexLabel::Element).collect();
    let graph = FiniteGraph::from_edges(elements.len(), &edges)?.with_labels(labels)?;
    Ok(CayleyBall {
        graph,
        center: center.clone(),
        radius,
        elements,
        index,
        layer,
    })
}
