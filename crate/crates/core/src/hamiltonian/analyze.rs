use serde::Serialize;

use super::path::{ends_from, reconstruct, DP_LIMIT};
use crate::error::{resource, Result};
use crate::graphs::FiniteGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonicityReport {
    pub vertex_count: usize,
    pub has_hamiltonian_cycle: bool,
    pub hamiltonian_connected: bool,
    pub bipartite: bool,
    /// Only evaluated for bipartite graphs.
    pub hamiltonian_laceable: Option<bool>,
    /// A Hamiltonian path for every pair u < v that has one.
    pub witnesses: Vec<(usize, usize, Vec<usize>)>,
    /// Pairs u < v without a Hamiltonian path.
    pub missing: Vec<(usize, usize)>,
}

impl HamiltonicityReport {
    pub fn has_path(&self, u: usize, v: usize) -> bool {
        let (a, b) = (u.min(v), u.max(v));
        !self.missing.contains(&(a, b))
    }
}

/// All-pairs Hamiltonian path decisions with witnesses, one subset DP per
/// source vertex.
pub fn analyze(g: &FiniteGraph) -> Result<HamiltonicityReport> {
    let n = g.vertex_count();
    if n > DP_LIMIT {
        return Err(resource("vertices in Hamiltonicity analysis", DP_LIMIT));
    }
    let color = g.bipartition();
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    let mut has_cycle = false;
    for u in 0..n {
        let dp = ends_from(g, u);
        let full = (1usize << n) - 1;
        if u == 0 && n >= 3 {
            has_cycle = g.neighbors(0).iter().any(|&w| dp[full] & (1 << w) != 0);
        }
        for v in u + 1..n {
            match reconstruct(g, &dp, u, v) {
                Some(p) => witnesses.push((u, v, p)),
                None => missing.push((u, v)),
            }
        }
    }
    let laceable = color
        .as_ref()
        .map(|c| missing.iter().all(|&(u, v)| c[u] == c[v]));
    Ok(HamiltonicityReport {
        vertex_count: n,
        has_hamiltonian_cycle: has_cycle,
        hamiltonian_connected: missing.is_empty(),
        bipartite: color.is_some(),
        hamiltonian_laceable: laceable,
        witnesses,
        missing,
    })
}
