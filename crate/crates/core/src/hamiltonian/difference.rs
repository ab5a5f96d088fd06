use serde::Serialize;

use crate::error::{invalid, resource, Result};
use crate::graphs::finite_cayley_graph;
use crate::groups::FiniteGroup;
use crate::tsp::ts_to_all;

/// Largest group order accepted.
pub const MAX_ORDER: usize = 22;

/// max_{g != e} TS(e -> g; G) - TS(e -> e; G), TS counted in edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonianDifference {
    pub value: i64,
    /// TS(e -> e; G).
    pub closed: u64,
    /// Smallest element attaining the maximum.
    pub argmax: usize,
    /// TS(e -> g; G) for every g.
    pub ts: Vec<u64>,
}

pub fn hamiltonian_difference(group: &FiniteGroup) -> Result<HamiltonianDifference> {
    let n = group.order();
    if n < 2 {
        return Err(invalid("Hamiltonian difference needs a nontrivial group"));
    }
    if n > MAX_ORDER {
        return Err(resource(
            "group order for Hamiltonian difference",
            MAX_ORDER,
        ));
    }
    let graph = finite_cayley_graph(group);
    let e = group.identity();
    let all: Vec<usize> = (0..n).collect();
    let ts = ts_to_all(&graph, e, &all)?;
    let (argmax, best) =
        (0..n)
            .filter(|&g| g != e)
            .map(|g| (g, ts[g]))
            .fold((usize::MAX, 0), |acc, (g, t)| {
                if t > acc.1 || acc.0 == usize::MAX {
                    (g, t)
                } else {
                    acc
                }
            });
    Ok(HamiltonianDifference {
        value: best as i64 - ts[e] as i64,
        closed: ts[e],
        argmax,
        ts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let h = hamiltonian_difference(&FiniteGroup::cycle(8).unwrap()).unwrap();
        assert_eq!((h.value, h.closed, h.argmax), (2, 8, 4));
        assert_eq!(
            hamiltonian_difference(&FiniteGroup::cycle(2).unwrap())
                .unwrap()
                .value,
            -1
        );
        let k4 = FiniteGroup::cyclic(4, &[1, 2, 3]).unwrap();
        assert_eq!(hamiltonian_difference(&k4).unwrap().value, -1);
        assert!(hamiltonian_difference(&FiniteGroup::cycle(1).unwrap()).is_err());
    }
}
