use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graphs::finite_cayley_graph;
use crate::groups::FiniteGroup;
use crate::hamiltonian::{hamiltonian_difference, HamiltonianDifference};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthVerdict {
    UniformlyBounded,
    Unbounded,
}

impl DepthVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            DepthVerdict::UniformlyBounded => "uniformly_bounded",
            DepthVerdict::Unbounded => "unbounded",
        }
    }
}

/// Depth of A ≀ (H ∗ K) with standard generators, decided by
/// ℋ(H) + ℋ(K) ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub h: String,
    pub k: String,
    /// `None` for a trivial factor.
    pub h_difference: Option<i64>,
    pub k_difference: Option<i64>,
    pub sum: Option<i64>,
    pub verdict: DepthVerdict,
    /// Depth bound 4(|H| + |K|) + 1 from the proof, when bounded.
    pub depth_constant: Option<u64>,
}

fn difference(g: &FiniteGroup) -> Result<Option<HamiltonianDifference>> {
    if g.order() == 1 {
        return Ok(None);
    }
    hamiltonian_difference(g).map(Some)
}

pub fn theorem_b_verdict(h: &FiniteGroup, k: &FiniteGroup) -> Result<TheoremVerdict> {
    let dh = difference(h)?.map(|d| d.value);
    let dk = difference(k)?.map(|d| d.value);
    // A trivial factor makes the base finite, and finite lamps then give
    // dead ends of every depth.
    let sum = dh.zip(dk).map(|(a, b)| a + b);
    let verdict = match sum {
        Some(s) if s >= 1 => DepthVerdict::UniformlyBounded,
        _ => DepthVerdict::Unbounded,
    };
    Ok(TheoremVerdict {
        h: h.table().name().to_string(),
        k: k.table().name().to_string(),
        h_difference: dh,
        k_difference: dk,
        sum,
        verdict,
        depth_constant: (verdict == DepthVerdict::UniformlyBounded)
            .then(|| 4 * (h.order() + k.order()) as u64 + 1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// One of 1, 2a, 2b, 3, 4a, 4b, 4c, 5 (4x with the factors swapped).
    pub case: String,
    pub verdict: DepthVerdict,
}

#[derive(Clone, Copy)]
struct Shape {
    order: usize,
    cycle: bool,
    bipartite: bool,
}

fn shape(g: &FiniteGroup) -> Shape {
    let graph = finite_cayley_graph(g);
    Shape {
        order: g.order(),
        cycle: graph.is_cycle(),
        bipartite: graph.is_bipartite(),
    }
}

/// Case analysis for free products of finite abelian groups, read off the
/// shapes of the two Cayley graphs.
pub fn classify_abelian_free_product(h: &FiniteGroup, k: &FiniteGroup) -> Result<Classification> {
    for g in [h, k] {
        if !g.table().is_abelian() {
            return Err(invalid(format!("{} is not abelian", g.table().name())));
        }
    }
    let (sh, sk) = (shape(h), shape(k));
    let bounded = |b: bool| {
        if b {
            DepthVerdict::UniformlyBounded
        } else {
            DepthVerdict::Unbounded
        }
    };
    let out = |case: &str, v: DepthVerdict| Classification {
        case: case.to_string(),
        verdict: v,
    };
    if sh.order == 1 || sk.order == 1 {
        return Ok(out("1", DepthVerdict::Unbounded));
    }
    for (small, other) in [(sh, sk), (sk, sh)] {
        if small.order <= 3 {
            return Ok(if other.cycle && other.order >= 8 {
                out("2a", DepthVerdict::UniformlyBounded)
            } else {
                out("2b", DepthVerdict::Unbounded)
            });
        }
    }
    let cycle_case = |c: Shape, other: Shape| -> (&'static str, DepthVerdict) {
        match c.order {
            4 | 5 => ("4a", bounded(other.cycle && other.order >= 6)),
            6 | 7 => ("4b", bounded(other.cycle || other.bipartite)),
            _ => ("4c", DepthVerdict::UniformlyBounded),
        }
    };
    if sh.cycle {
        let (case, v) = cycle_case(sh, sk);
        return Ok(out(case, v));
    }
    if sk.cycle {
        let (case, v) = cycle_case(sk, sh);
        return Ok(out(&format!("5 (mirror of {case})"), v));
    }
    Ok(out("3", DepthVerdict::Unbounded))
}
