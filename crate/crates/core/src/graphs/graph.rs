use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{invalid, Result};
use crate::groups::{FiniteGroup, GroupElement};

/// Distance value for unreachable vertices.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Element(GroupElement),
    /// Grid coordinates, 1-based.
    Coords(Vec<i64>),
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<VertexLabel>>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list, dropping duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FiniteGraph { adj, labels: None })
    }

    /// Builds a graph from adjacency lists, which must be symmetric.
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(invalid(format!("neighbor {v} of {u} out of range")));
                }
                if !adj[v].contains(&u) {
                    return Err(invalid(format!("adjacency is not symmetric at ({u},{v})")));
                }
                edges.push((u, v));
            }
        }
        FiniteGraph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteGraph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        FiniteGraph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        FiniteGraph::from_edges(n, &edges).expect("complete edges are valid")
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(invalid(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&VertexLabel> {
        self.labels.as_ref().map(|l| &l[v])
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> Vec<Vec<u32>> {
        (0..self.vertex_count()).map(|v| self.bfs(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Largest distance, or `None` for a disconnected graph.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for v in 0..self.vertex_count() {
            for d in self.bfs(v) {
                if d == UNREACHABLE {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// A 2-coloring, when one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True for a connected 2-regular graph on at least 3 vertices.
    pub fn is_cycle(&self) -> bool {
        self.vertex_count() >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    /// Subgraph induced on `vertices`, renumbered in the given order. Labels
    /// are carried over.
    pub fn induced(&self, vertices: &[usize]) -> FiniteGraph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .map(|&w| index[w])
                    .filter(|&w| w != usize::MAX)
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|ls| vertices.iter().map(|&v| ls[v].clone()).collect());
        FiniteGraph { adj, labels }
    }

    /// `v: n1 n2 ...` per line.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for (v, list) in self.adj.iter().enumerate() {
            let _ = write!(out, "{v}:");
            for w in list {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_adjacency_text(text: &str) -> Result<Self> {
        let mut adj: Vec<Vec<usize>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| invalid(format!("line {}: expected `v: n1 n2 ...`", lineno + 1)))?;
            let v: usize = head
                .trim()
                .parse()
                .map_err(|_| invalid(format!("line {}: bad vertex id", lineno + 1)))?;
            if v != adj.len() {
                return Err(invalid(format!(
                    "line {}: vertices must be listed in order",
                    lineno + 1
                )));
            }
            let list = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| invalid(format!("line {}: bad neighbor id", lineno + 1)))?;
            adj.push(list);
        }
        FiniteGraph::from_adjacency(adj)
    }

    /// DOT text with vertex ids given by `name` (quoted), edges in sorted order.
    pub fn to_dot(&self, graph_name: &str, name: impl Fn(usize) -> String) -> String {
        let mut out = format!("graph \"{graph_name}\" {{\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  \"{}\";", escape(&name(v)));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                escape(&name(u)),
                escape(&name(v))
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Cayley graph of a finite group: vertex x is joined to x*s for each generator.
pub fn finite_cayley_graph(group: &FiniteGroup) -> FiniteGraph {
    let n = group.order();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| group.neighbors(x).map(move |y| (x, y)).collect::<Vec<_>>())
        .collect();
    let labels = (0..n)
        .map(|x| VertexLabel::Element(GroupElement::Finite(x)))
        .collect();
    FiniteGraph::from_edges(n, &edges)
        .expect("a generating set without the identity gives a simple graph")
        .with_labels(labels)
        .expect("one label per element")
}

/// Graph on the same vertices joining pairs at distance 1..=k.
pub fn power_graph(g: &FiniteGraph, k: u32) -> Result<FiniteGraph> {
    if k == 0 {
        return Err(invalid("power must be at least 1"));
    }
    if !g.is_connected() {
        return Err(invalid("power graph needs a connected graph"));
    }
    let mut edges = Vec::new();
    for u in 0..g.vertex_count() {
        for (v, d) in g.bfs(u).into_iter().enumerate() {
            if u < v && d <= k {
                edges.push((u, v));
            }
        }
    }
    let mut p = FiniteGraph::from_edges(g.vertex_count(), &edges)?;
    p.labels = g.labels.clone();
    Ok(p)
}

/// Cartesian product; vertex (u1, u2) has index `u1 * |V2| + u2`.
pub fn product_graph(g1: &FiniteGraph, g2: &FiniteGraph) -> FiniteGraph {
    let n2 = g2.vertex_count();
    let mut edges = Vec::new();
    for u1 in 0..g1.vertex_count() {
        for u2 in 0..n2 {
            for &v2 in g2.neighbors(u2) {
                if u2 < v2 {
                    edges.push((u1 * n2 + u2, u1 * n2 + v2));
                }
            }
            for &v1 in g1.neighbors(u1) {
                if u1 < v1 {
                    edges.push((u1 * n2 + u2, v1 * n2 + u2));
                }
            }
        }
    }
    let mut p =
        FiniteGraph::from_edges(g1.vertex_count() * n2, &edges).expect("product edges are valid");
    if let (Some(l1), Some(l2)) = (&g1.labels, &g2.labels) {
        let mut labels = Vec::with_capacity(p.vertex_count());
        for a in l1 {
            for b in l2 {
                match (a, b) {
                    (VertexLabel::Coords(x), VertexLabel::Coords(y)) => {
                        labels.push(VertexLabel::Coords(x.iter().chain(y).copied().collect()))
                    }
                    _ => {
                        labels.clear();
                        break;
                    }
                }
            }
        }
        if labels.len() == p.vertex_count() {
            p.labels = Some(labels);
        }
    }
    p
}

/// Cube(m_1, ..., m_s) = I_{m_1} x ... x I_{m_s} with 1-based coordinate
/// labels. Vertex indices are mixed radix with the first coordinate slowest.
pub fn cube_graph(dims: &[usize]) -> Result<FiniteGraph> {
    if dims.is_empty() || dims.iter().any(|&m| m == 0) {
        return Err(invalid(
            "cube dimensions must be a nonempty list of positive integers",
        ));
    }
    let mut g = interval(dims[0]);
    for &m in &dims[1..] {
        g = product_graph(&g, &interval(m));
    }
    Ok(g)
}

fn interval(m: usize) -> FiniteGraph {
    let labels = (1..=m as i64)
        .map(|i| VertexLabel::Coords(vec![i]))
        .collect();
    FiniteGraph::path(m)
        .with_labels(labels)
        .expect("one label per vertex")
}

/// Index of 1-based coordinates in [`cube_graph`].
pub fn cube_index(dims: &[usize], coords: &[usize]) -> Result<usize> {
    if coords.len() != dims.len() {
        return Err(invalid(format!(
            "expected {} coordinates, got {}",
            dims.len(),
            coords.len()
        )));
    }
    let mut idx = 0;
    for (&c, &m) in coords.iter().zip(dims) {
        if c == 0 || c > m {
            return Err(invalid(format!("coordinate {c} outside 1..={m}")));
        }
        idx = idx * m + (c - 1);
    }
    Ok(idx)
}

/// 1-based coordinates of a [`cube_graph`] vertex.
pub fn cube_coords(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &m) in out.iter_mut().zip(dims).rev() {
        *slot = idx % m + 1;
        idx /= m;
    }
    out
}
