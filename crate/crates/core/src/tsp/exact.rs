use std::collections::BTreeMap;

use crate::error::{invalid, resource, Error, Result};
use crate::graphs::{FiniteGraph, UNREACHABLE};

/// Largest required set the subset DP accepts.
pub const MAX_REQUIRED: usize = 22;

const INF: u32 = u32::MAX / 4;

/// TS(start -> end; required) on a finite graph, with optional per-vertex
/// service weights charged once for each required vertex.
#[derive(Debug, Clone)]
pub struct TspInstance<'g> {
    pub graph: &'g FiniteGraph,
    pub start: usize,
    pub end: usize,
    pub required: Vec<usize>,
    pub service_weight: BTreeMap<usize, u64>,
}

/// Length counts edges plus service weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspSolution {
    pub length: u64,
    pub walk: Vec<usize>,
}

impl TspSolution {
    pub fn edges(&self) -> usize {
        self.walk.len().saturating_sub(1)
    }
}

impl<'g> TspInstance<'g> {
    pub fn new(
        graph: &'g FiniteGraph,
        start: usize,
        end: usize,
        required: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut required: Vec<usize> = required.into_iter().collect();
        required.sort_unstable();
        required.dedup();
        TspInstance {
            graph,
            start,
            end,
            required,
            service_weight: BTreeMap::new(),
        }
    }

    pub fn with_weight(mut self, v: usize, w: u64) -> Self {
        self.service_weight.insert(v, w);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        for &v in [self.start, self.end].iter().chain(&self.required) {
            if v >= n {
                return Err(invalid(format!("vertex {v} out of range for {n} vertices")));
            }
        }
        if let Some(v) = self
            .service_weight
            .keys()
            .find(|v| self.required.binary_search(v).is_err())
        {
            return Err(invalid(format!(
                "service weight on non-required vertex {v}"
            )));
        }
        if !self.graph.is_connected() {
            return Err(invalid("TSP instance graph is disconnected"));
        }
        Ok(())
    }

    pub fn weight_total(&self) -> u64 {
        self.service_weight.values().sum()
    }

    /// Checks that `walk` is a valid solution walk and that `length` matches it.
    pub fn check(&self, sol: &TspSolution) -> Result<()> {
        check_walk(self.graph, &sol.walk, self.start, self.end, &self.required)?;
        let expected = sol.edges() as u64 + self.weight_total();
        if sol.length != expected {
            return Err(Error::Verification(format!(
                "claimed length {} but walk costs {expected}",
                sol.length
            )));
        }
        Ok(())
    }
}

/// Structural validation: endpoints, adjacency of consecutive vertices, and
/// coverage of `required`.
pub fn check_walk(
    g: &FiniteGraph,
    walk: &[usize],
    start: usize,
    end: usize,
    required: &[usize],
) -> Result<()> {
    let fail = |m: String| Err(Error::Verification(m));
    if walk.first() != Some(&start) || walk.last() != Some(&end) {
        return fail(format!("walk does not run from {start} to {end}"));
    }
    if let Some(p) = walk.windows(2).find(|p| !g.has_edge(p[0], p[1])) {
        return fail(format!("step {} -> {} is not an edge", p[0], p[1]));
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in walk {
        seen[v] = true;
    }
    if let Some(v) = required.iter().find(|&&v| !seen[v]) {
        return fail(format!("required vertex {v} is never visited"));
    }
    Ok(())
}

/// Steiner-TSP over the shortest-path metric. Start and end are serviced
/// for free, so only the remaining required vertices enter the subset DP.
/// The returned walk is the lexicographically smallest optimal one.
pub fn solve_exact(inst: &TspInstance) -> Result<TspSolution> {
    inst.validate()?;
    let g = inst.graph;
    let targets: Vec<usize> = inst
        .required
        .iter()
        .copied()
        .filter(|&v| v != inst.start && v != inst.end)
        .collect();
    let k = targets.len();
    if k > MAX_REQUIRED {
        return Err(resource("required vertices in exact TSP", MAX_REQUIRED));
    }
    let dist: Vec<Vec<u32>> = targets.iter().map(|&r| g.bfs(r)).collect();
    let to_end = g.bfs(inst.end);
    let full = (1usize << k) - 1;

    // rest[mask * k + j]: cheapest walk from targets[j] to the end servicing
    // `mask` (j not in mask).
    let mut rest = vec![INF; (full + 1) * k.max(1)];
    for mask in 0..=full {
        for j in 0..k {
            if mask & (1 << j) != 0 {
                continue;
            }
            let v = if mask == 0 {
                to_end[targets[j]]
            } else {
                let mut best = INF;
                let mut m = mask;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    m &= m - 1;
                    best = best.min(dist[j][targets[i]] + rest[(mask ^ (1 << i)) * k + i]);
                }
                best
            };
            rest[mask * k + j] = v;
        }
    }

    let mut slot = vec![usize::MAX; g.vertex_count()];
    for (j, &r) in targets.iter().enumerate() {
        slot[r] = j;
    }
    let remaining = |v: usize, mask: usize| -> u32 {
        if mask == 0 {
            return to_end[v];
        }
        let mut best = INF;
        let mut m = mask;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            best = best.min(dist[j][v] + rest[(mask ^ (1 << j)) * k + j]);
        }
        best
    };

    let mut cur = inst.start;
    let mut mask = full;
    let mut left = remaining(cur, mask);
    if left >= INF {
        return Err(Error::Internal(
            "unreachable target in a connected graph".into(),
        ));
    }
    let length = u64::from(left) + inst.weight_total();
    let mut walk = vec![cur];
    while left > 0 {
        let step = g
            .neighbors(cur)
            .iter()
            .map(|&w| {
                let m = if slot[w] != usize::MAX {
                    mask & !(1 << slot[w])
                } else {
                    mask
                };
                (w, m)
            })
            .find(|&(w, m)| remaining(w, m) + 1 == left);
        let Some((w, m)) = step else {
            return Err(Error::Internal(
                "walk reconstruction lost the optimum".into(),
            ));
        };
        cur = w;
        mask = m;
        left -= 1;
        walk.push(cur);
    }
    Ok(TspSolution { length, walk })
}

/// TS(start -> v; required) for every vertex v, in edges and without service
/// weights, from one forward subset DP.
pub fn ts_to_all(g: &FiniteGraph, start: usize, required: &[usize]) -> Result<Vec<u64>> {
    if !g.is_connected() {
        return Err(invalid("TSP instance graph is disconnected"));
    }
    let mut targets: Vec<usize> = required.iter().copied().filter(|&v| v != start).collect();
    targets.sort_unstable();
    targets.dedup();
    let k = targets.len();
    if k > MAX_REQUIRED {
        return Err(resource("required vertices in exact TSP", MAX_REQUIRED));
    }
    let from_start = g.bfs(start);
    if k == 0 {
        return Ok(from_start.into_iter().map(u64::from).collect());
    }
    let dist: Vec<Vec<u32>> = targets.iter().map(|&r| g.bfs(r)).collect();
    let full = (1usize << k) - 1;
    let mut reach = vec![INF; (full + 1) * k];
    for j in 0..k {
        reach[(1 << j) * k + j] = from_start[targets[j]];
    }
    for mask in 1..=full {
        for i in 0..k {
            let c = reach[mask * k + i];
            if mask & (1 << i) == 0 || c >= INF {
                continue;
            }
            let mut free = full & !mask;
            while free != 0 {
                let j = free.trailing_zeros() as usize;
                free &= free - 1;
                let slot = &mut reach[(mask | (1 << j)) * k + j];
                *slot = (*slot).min(c + dist[i][targets[j]]);
            }
        }
    }
    Ok((0..g.vertex_count())
        .map(|v| {
            (0..k)
                .map(|i| u64::from(reach[full * k + i] + dist[i][v]))
                .min()
                .expect("k > 0")
        })
        .collect())
}

/// Shortest path between two vertices, lexicographically smallest.
pub fn shortest_path(g: &FiniteGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let d = g.bfs(to);
    if d[from] == UNREACHABLE {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = *g.neighbors(cur).iter().find(|&&w| d[w] + 1 == d[cur])?;
        path.push(cur);
    }
    Some(path)
}
