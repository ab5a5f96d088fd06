use std::collections::VecDeque;

use super::exact::{TspInstance, TspSolution};
use crate::error::{invalid, Error, Result};

/// Exhaustive search over walks, as breadth-first search on states
/// (vertex, set of required vertices visited so far). Independent of the
/// metric-closure DP; meant for small test instances.
pub fn brute_force_oracle(inst: &TspInstance, max_len: u64) -> Result<TspSolution> {
    inst.validate()?;
    let g = inst.graph;
    let n = g.vertex_count();
    let k = inst.required.len();
    if k > 20 {
        return Err(invalid(
            "brute-force oracle handles at most 20 required vertices",
        ));
    }
    let mut bit = vec![0usize; n];
    for (i, &r) in inst.required.iter().enumerate() {
        bit[r] = 1 << i;
    }
    let full = (1usize << k) - 1;
    let states = n << k;
    let mut parent = vec![usize::MAX; states];
    let mut depth = vec![u64::MAX; states];
    let encode = |v: usize, m: usize| (v << k) | m;

    let s0 = encode(inst.start, bit[inst.start]);
    depth[s0] = 0;
    let mut queue = VecDeque::from([s0]);
    while let Some(s) = queue.pop_front() {
        let (v, m) = (s >> k, s & full);
        if v == inst.end && m == full {
            let mut walk = vec![v];
            let mut cur = s;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                walk.push(cur >> k);
            }
            walk.reverse();
            return Ok(TspSolution {
                length: depth[s] + inst.weight_total(),
                walk,
            });
        }
        if depth[s] >= max_len {
            continue;
        }
        for &w in g.neighbors(v) {
            let t = encode(w, m | bit[w]);
            if depth[t] == u64::MAX {
                depth[t] = depth[s] + 1;
                parent[t] = s;
                queue.push_back(t);
            }
        }
    }
    Err(Error::BoundExceeded {
        what: "no covering walk within the length bound".into(),
        lower_bound: max_len + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FiniteGraph;

    #[test]
    fn oracle_examples() {
        let p = FiniteGraph::path(3);
        assert_eq!(
            brute_force_oracle(&TspInstance::new(&p, 1, 1, 0..3), 20)
                .unwrap()
                .length,
            4
        );
        let one = FiniteGraph::path(1);
        assert_eq!(
            brute_force_oracle(&TspInstance::new(&one, 0, 0, [0]), 0)
                .unwrap()
                .length,
            0
        );
        let c4 = FiniteGraph::cycle(4);
        let sol = brute_force_oracle(&TspInstance::new(&c4, 0, 1, 0..4), 20).unwrap();
        assert_eq!(sol.length, 3);
    }

    #[test]
    fn bound_exceeded_is_explicit() {
        let p = FiniteGraph::path(5);
        let err = brute_force_oracle(&TspInstance::new(&p, 2, 2, 0..5), 5).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { lower_bound: 6, .. }));
    }
}
