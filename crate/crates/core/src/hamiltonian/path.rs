use crate::error::{invalid, resource, Result};
use crate::graphs::FiniteGraph;

/// Graphs up to this size are decided by the subset DP.
pub const DP_LIMIT: usize = 24;
/// Graphs up to this size are searched by pruned backtracking.
pub const SEARCH_LIMIT: usize = 40;
/// Node budget for one backtracking search.
const SEARCH_BUDGET: u64 = 20_000_000;

/// A Hamiltonian path from `u` to `v`, if one exists.
pub fn hamiltonian_path(g: &FiniteGraph, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(invalid(format!(
            "endpoints ({u},{v}) out of range for {n} vertices"
        )));
    }
    if u == v {
        return Ok((n == 1).then(|| vec![u]));
    }
    if !parity_allows(g, u, v) || !g.is_connected() {
        return Ok(None);
    }
    if n <= DP_LIMIT {
        let dp = ends_from(g, u);
        return Ok(reconstruct(g, &dp, u, v));
    }
    if n <= SEARCH_LIMIT {
        return search(g, u, v);
    }
    Err(resource(
        "vertices in Hamiltonian path search",
        SEARCH_LIMIT,
    ))
}

/// In a bipartite graph a Hamiltonian path alternates colors, which fixes
/// the colors of its endpoints.
pub(crate) fn parity_allows(g: &FiniteGraph, u: usize, v: usize) -> bool {
    let Some(color) = g.bipartition() else {
        return true;
    };
    let n = g.vertex_count();
    let zeros = color.iter().filter(|&&c| c == 0).count();
    if n % 2 == 0 {
        color[u] != color[v] && zeros * 2 == n
    } else {
        let big = if zeros * 2 > n { 0 } else { 1 };
        color[u] == big && color[v] == big && zeros.abs_diff(n - zeros) == 1
    }
}

/// `dp[mask]` = set of vertices w such that some path from `u` visits
/// exactly `mask` and ends at w.
pub(crate) fn ends_from(g: &FiniteGraph, u: usize) -> Vec<u32> {
    let n = g.vertex_count();
    assert!(n <= DP_LIMIT);
    let nb: Vec<u32> = (0..n)
        .map(|w| g.neighbors(w).iter().fold(0, |m, &x| m | (1 << x)))
        .collect();
    let mut dp = vec![0u32; 1 << n];
    dp[1 << u] = 1 << u;
    for mask in 1..(1usize << n) {
        let mut ends = dp[mask];
        while ends != 0 {
            let w = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = nb[w] & !(mask as u32);
            while next != 0 {
                let x = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[mask | (1 << x)] |= 1 << x;
            }
        }
    }
    dp
}

/// Walks the DP table back from `v`, always stepping to the smallest
/// admissible predecessor.
pub(crate) fn reconstruct(g: &FiniteGraph, dp: &[u32], u: usize, v: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let full = (1usize << n) - 1;
    if dp[full] & (1 << v) == 0 {
        return None;
    }
    let mut path = vec![v];
    let mut mask = full;
    let mut cur = v;
    while cur != u {
        let prev_mask = mask & !(1 << cur);
        let prev = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| prev_mask & (1 << w) != 0 && dp[prev_mask] & (1 << w) != 0)
            .expect("DP entry has a predecessor");
        mask = prev_mask;
        cur = prev;
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

fn search(g: &FiniteGraph, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    let nb: Vec<u64> = (0..n)
        .map(|w| g.neighbors(w).iter().fold(0, |m, &x| m | (1 << x)))
        .collect();
    let mut state = Search {
        nb,
        target: v,
        path: vec![u],
        nodes: 0,
    };
    let free = ((1u64 << n) - 1) & !(1 << u);
    if state.extend(u, free)? {
        Ok(Some(state.path))
    } else {
        Ok(None)
    }
}

struct Search {
    nb: Vec<u64>,
    target: usize,
    path: Vec<usize>,
    nodes: u64,
}

impl Search {
    /// Extends the path from `cur` through every vertex of `free`, ending at
    /// the target.
    fn extend(&mut self, cur: usize, free: u64) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(resource(
                "backtracking nodes in Hamiltonian path search",
                SEARCH_BUDGET as usize,
            ));
        }
        if free == 0 {
            return Ok(cur == self.target);
        }
        let Some(forced) = self.viable(cur, free) else {
            return Ok(false);
        };
        let mut options: Vec<(u32, usize)> = Vec::new();
        let mut cand = match forced {
            Some(w) => self.nb[cur] & (1 << w),
            None => self.nb[cur] & free,
        };
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if w == self.target && free.count_ones() > 1 {
                continue;
            }
            let onward = (self.nb[w] & free & !(1 << w)).count_ones();
            options.push((onward, w));
        }
        options.sort_unstable();
        for (_, w) in options {
            self.path.push(w);
            if self.extend(w, free & !(1 << w))? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }

    /// Degree and connectivity pruning on the unvisited part. Returns `None`
    /// for a dead branch, or the forced next vertex if there is one.
    fn viable(&self, cur: usize, free: u64) -> Option<Option<usize>> {
        let avail = free | (1 << cur);
        let many = free.count_ones() > 1;
        let mut forced = None;
        let mut rest = free;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if w == self.target {
                // The target is entered last, from another unvisited vertex
                // unless it is the only one left.
                let from = if many {
                    self.nb[w] & free
                } else {
                    self.nb[w] & avail
                };
                if from == 0 {
                    return None;
                }
                continue;
            }
            let d = (self.nb[w] & avail).count_ones();
            if d < 2 {
                return None;
            }
            // An interior vertex with only two options, one of them cur,
            // has to come next.
            if d == 2 && self.nb[w] & (1 << cur) != 0 {
                if forced.is_some() {
                    return None;
                }
                forced = Some(w);
            }
        }
        let mut seen = 1u64 << cur;
        let mut frontier = seen;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.nb[w] & avail & !seen;
            seen |= new;
            frontier |= new;
        }
        (seen & free == free).then_some(forced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cube_graph, cube_index};

    fn is_ham_path(g: &FiniteGraph, p: &[usize], u: usize, v: usize) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        p.first() == Some(&u)
            && p.last() == Some(&v)
            && p.len() == g.vertex_count()
            && p.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    #[test]
    fn small_examples() {
        let c4 = FiniteGraph::cycle(4);
        let p = hamiltonian_path(&c4, 0, 1).unwrap().unwrap();
        assert_eq!(p, vec![0, 3, 2, 1]);
        assert!(hamiltonian_path(&c4, 0, 2).unwrap().is_none());
        assert_eq!(
            hamiltonian_path(&FiniteGraph::path(1), 0, 0).unwrap(),
            Some(vec![0])
        );
        assert_eq!(hamiltonian_path(&c4, 0, 0).unwrap(), None);
    }

    #[test]
    fn grid_4x3_has_blocked_color_compatible_pairs() {
        // Width-3 grids have obstructions beyond parity.
        let dims = [4, 3];
        let g = cube_graph(&dims).unwrap();
        let blocked: Vec<(usize, usize)> = (0..12)
            .flat_map(|u| (0..12).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && parity_allows(&g, u, v))
            .filter(|&(u, v)| hamiltonian_path(&g, u, v).unwrap().is_none())
            .collect();
        assert!(!blocked.is_empty());
        for &(u, v) in &blocked {
            assert!(search(&g, u, v).unwrap().is_none());
        }
    }

    #[test]
    fn backtracking_agrees_with_dp() {
        // Grids with up to 20 vertices are decided both ways.
        for dims in [[4, 5], [3, 6], [2, 7], [4, 4]] {
            let g = cube_graph(&dims).unwrap();
            let n = g.vertex_count();
            for u in 0..n {
                let dp = ends_from(&g, u);
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    let by_dp = dp[(1 << n) - 1] & (1 << v) != 0;
                    let found = search(&g, u, v).unwrap();
                    assert_eq!(
                        found.is_some(),
                        by_dp && parity_allows(&g, u, v),
                        "{dims:?} {u}->{v}"
                    );
                    if let Some(p) = found {
                        assert!(is_ham_path(&g, &p, u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn large_grid_by_search() {
        let dims = [6, 6];
        let g = cube_graph(&dims).unwrap();
        let u = cube_index(&dims, &[1, 1]).unwrap();
        let v = cube_index(&dims, &[6, 5]).unwrap();
        let p = hamiltonian_path(&g, u, v).unwrap().unwrap();
        assert!(is_ham_path(&g, &p, u, v));
    }
}
