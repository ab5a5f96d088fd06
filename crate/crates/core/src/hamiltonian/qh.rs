//! Quasi-Hamiltonian certificates: finite sets F ⊇ B(e, n) together with
//! walks from e through all of F ending at every x ∈ F, each with at most
//! |F| + M vertices. Walk lengths in this module count vertices.

use std::collections::HashSet;

use serde::Serialize;

use super::cube3::cube3_hamiltonian_path;
use super::grid::cube_spanning_path;
use super::nash_williams::nash_williams_basis;
use crate::error::{invalid, Error, Result};
use crate::graphs::{cayley_ball, cube_coords};
use crate::groups::{GroupElement, GroupModel};
use crate::limits::Limits;
use crate::tsp::{solve_exact, ts_tree, TspInstance, MAX_REQUIRED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QhStrategy {
    /// Box images of a Nash-Williams basis with grid spanning walks.
    AbelianBox,
    /// F = B(e, n) with exact TSP walks.
    ExactBall,
    /// F = B(e, 3n) walked by Hamiltonian paths of its cube, which is the
    /// ball of radius n for the generating set S ∪ S² ∪ S³.
    CubeOfBall,
}

impl QhStrategy {
    pub fn parse(name: &str) -> Result<QhStrategy> {
        match name {
            "abelian-box" | "abelian_box" => Ok(QhStrategy::AbelianBox),
            "exact-ball" | "exact_ball" => Ok(QhStrategy::ExactBall),
            "cube-of-ball" | "cube_of_ball" => Ok(QhStrategy::CubeOfBall),
            _ => Err(invalid(format!(
                "unknown strategy {name:?}; expected abelian-box, exact-ball or cube-of-ball"
            ))),
        }
    }

    /// Largest generator distance between consecutive walk vertices.
    pub fn step(self) -> u64 {
        match self {
            QhStrategy::CubeOfBall => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QhWitness {
    pub n: u32,
    pub set: Vec<GroupElement>,
    /// One walk per element of `set`, in the same order, ending there.
    pub walks: Vec<Vec<GroupElement>>,
}

impl QhWitness {
    pub fn excess(&self) -> u64 {
        self.walks
            .iter()
            .map(|w| w.len() as u64 - self.set.len() as u64)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QhCertificate {
    pub group: String,
    pub strategy: QhStrategy,
    /// The requested constant.
    pub m: u64,
    /// The smallest constant satisfied by every witness.
    pub achieved: u64,
    pub witnesses: Vec<QhWitness>,
}

impl QhCertificate {
    pub fn to_json(&self, model: &GroupModel) -> serde_json::Value {
        let fmt = |g: &GroupElement| model.format(g);
        let witnesses: Vec<serde_json::Value> = self
            .witnesses
            .iter()
            .map(|w| {
                serde_json::json!({
                    "n": w.n,
                    "size": w.set.len(),
                    "excess": w.excess(),
                    "set": w.set.iter().map(fmt).collect::<Vec<_>>(),
                    "walks": w.walks.iter().map(|p| p.iter().map(fmt).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "group": self.group,
            "strategy": self.strategy,
            "step": self.strategy.step(),
            "M": self.m,
            "achieved_M": self.achieved,
            "witnesses": witnesses,
        })
    }
}

/// Witnesses for n = 1..=n_max. Fails with a verification error when some
/// witness needs more than `m` extra vertices.
pub fn qh_certificate(
    model: &GroupModel,
    n_max: u32,
    m: u64,
    strategy: QhStrategy,
    limits: &Limits,
) -> Result<QhCertificate> {
    if model.order().is_some() {
        return Err(invalid(
            "quasi-Hamiltonian certificates concern infinite groups",
        ));
    }
    let mut witnesses = Vec::new();
    for n in 1..=n_max {
        let w = match strategy {
            QhStrategy::AbelianBox => abelian_box(model, n, limits)?,
            QhStrategy::ExactBall => exact_ball(model, n, limits)?,
            QhStrategy::CubeOfBall => cube_of_ball(model, n, limits)?,
        };
        if w.excess() > m {
            return Err(Error::Verification(format!(
                "{} at n = {n} needs M = {} > {m} with strategy {strategy:?}",
                model.name(),
                w.excess()
            )));
        }
        witnesses.push(w);
    }
    let achieved = witnesses.iter().map(QhWitness::excess).max().unwrap_or(0);
    Ok(QhCertificate {
        group: model.name(),
        strategy,
        m,
        achieved,
        witnesses,
    })
}

fn abelian_box(model: &GroupModel, n: u32, limits: &Limits) -> Result<QhWitness> {
    let GroupModel::Abelian(group) = model else {
        return Err(Error::ModelMismatch(format!(
            "abelian-box needs an abelian group, got {}",
            model.name()
        )));
    };
    let basis = nash_williams_basis(group)?;
    if basis.free.len() + basis.finite.len() < 2 {
        return Err(invalid(
            "the only box shape is an interval, as for (Z, {±1}), which is not quasi-Hamiltonian; \
             use the refutation table instead",
        ));
    }
    let ball = cayley_ball(model, n, limits)?;
    let mut l = n as usize;
    let (dims, image) = loop {
        let dims = basis.box_dims(l);
        let total: usize = dims.iter().product();
        if total > limits.vertex_cap {
            return Err(crate::error::resource("box vertices", limits.vertex_cap));
        }
        let image: Vec<GroupElement> = (0..total)
            .map(|i| GroupElement::Abelian(basis.at_box(group, l, &cube_coords(&dims, i))))
            .collect();
        let lookup: HashSet<&GroupElement> = image.iter().collect();
        if ball.elements().iter().all(|g| lookup.contains(g)) {
            break (dims, image);
        }
        l *= 2;
    };
    let r = basis.free.len();
    let mut origin = vec![l + 1; r];
    origin.extend(std::iter::repeat(1).take(basis.finite.len()));
    let mut walks = Vec::with_capacity(image.len());
    for i in 0..image.len() {
        let walk = cube_spanning_path(&dims, &origin, &cube_coords(&dims, i))?;
        walks.push(walk.into_iter().map(|v| image[v].clone()).collect());
    }
    Ok(QhWitness {
        n,
        set: image,
        walks,
    })
}

fn exact_ball(model: &GroupModel, n: u32, limits: &Limits) -> Result<QhWitness> {
    let ball = cayley_ball(model, n + 1, limits)?;
    let inner: Vec<usize> = (0..ball.len()).filter(|&v| ball.layer(v) <= n).collect();
    if inner.len() > MAX_REQUIRED {
        return Err(crate::error::resource(
            "ball elements for the exact-ball strategy",
            MAX_REQUIRED,
        ));
    }
    let e = ball
        .vertex_of(&model.identity())
        .expect("center is in the ball");
    let mut walks = Vec::with_capacity(inner.len());
    for &x in &inner {
        let sol = solve_exact(&TspInstance::new(&ball.graph, e, x, inner.iter().copied()))?;
        walks.push(
            sol.walk
                .iter()
                .map(|&v| ball.element_of(v).clone())
                .collect(),
        );
    }
    let set = inner.iter().map(|&v| ball.element_of(v).clone()).collect();
    Ok(QhWitness { n, set, walks })
}

fn cube_of_ball(model: &GroupModel, n: u32, limits: &Limits) -> Result<QhWitness> {
    let ball = cayley_ball(model, 3 * n, limits)?;
    let g = &ball.graph;
    let e = ball
        .vertex_of(&model.identity())
        .expect("center is in the ball");
    let to_elements = |p: Vec<usize>| -> Vec<GroupElement> {
        p.into_iter().map(|v| ball.element_of(v).clone()).collect()
    };
    let mut walks = Vec::with_capacity(ball.len());
    for x in 0..ball.len() {
        let walk = if x == e {
            // Around to a neighbor and one step back.
            let a = g.neighbors(e)[0];
            let mut p = cube3_hamiltonian_path(g, e, a)?;
            p.push(e);
            p
        } else {
            cube3_hamiltonian_path(g, e, x)?
        };
        walks.push(to_elements(walk));
    }
    Ok(QhWitness {
        n,
        set: ball.elements().to_vec(),
        walks,
    })
}

/// Replays every claim of a certificate: e ∈ F, B(e, n) ⊆ F for the
/// strategy's generating set, F connected, each walk starts at e, ends at
/// its target, covers F with steps of bounded length, and |F| ≤ length ≤
/// |F| + M.
pub fn verify_certificate(model: &GroupModel, cert: &QhCertificate, limits: &Limits) -> Result<()> {
    let step = cert.strategy.step();
    let e = model.identity();
    let fail = |n: u32, what: String| Err(Error::Verification(format!("witness n = {n}: {what}")));
    for w in &cert.witnesses {
        let set: HashSet<&GroupElement> = w.set.iter().collect();
        if set.len() != w.set.len() {
            return fail(w.n, "repeated element in F".into());
        }
        if !set.contains(&e) {
            return fail(w.n, "identity missing from F".into());
        }
        let ball = cayley_ball(model, w.n * step as u32, limits)?;
        if let Some(g) = ball.elements().iter().find(|g| !set.contains(g)) {
            return fail(
                w.n,
                format!("ball element {} missing from F", model.format(g)),
            );
        }
        let close = |a: &GroupElement, b: &GroupElement| -> Result<bool> {
            Ok(model.distance(a, b)? <= step)
        };
        let mut reached = vec![false; w.set.len()];
        reached[w.set.iter().position(|g| *g == e).unwrap()] = true;
        let mut stack = vec![e.clone()];
        while let Some(a) = stack.pop() {
            for (i, b) in w.set.iter().enumerate() {
                if !reached[i] && close(&a, b)? {
                    reached[i] = true;
                    stack.push(b.clone());
                }
            }
        }
        if reached.contains(&false) {
            return fail(w.n, "F is not connected".into());
        }
        if w.walks.len() != w.set.len() {
            return fail(w.n, "one walk per element expected".into());
        }
        for (x, walk) in w.set.iter().zip(&w.walks) {
            if walk.first() != Some(&e) || walk.last() != Some(x) {
                return fail(
                    w.n,
                    format!("walk to {} has wrong endpoints", model.format(x)),
                );
            }
            for pair in walk.windows(2) {
                if !close(&pair[0], &pair[1])? {
                    return fail(
                        w.n,
                        format!("walk to {} takes a long step", model.format(x)),
                    );
                }
            }
            let visited: HashSet<&GroupElement> = walk.iter().collect();
            if !set.iter().all(|g| visited.contains(g)) {
                return fail(w.n, format!("walk to {} misses part of F", model.format(x)));
            }
            let len = walk.len() as u64;
            if len < w.set.len() as u64 || len > w.set.len() as u64 + cert.m {
                return fail(
                    w.n,
                    format!(
                        "walk to {} has {len} vertices for |F| = {}",
                        model.format(x),
                        w.set.len()
                    ),
                );
            }
        }
    }
    Ok(())
}

/// One row of the excess table for F = B(e, n) in a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcessRow {
    pub n: u32,
    pub ball_size: u64,
    /// TS(e -> e; B_n) in edges.
    pub closed_ts_edges: u64,
    /// closed_ts_edges - |B_n|.
    pub closed_excess: i64,
    /// min over x of TS(e -> x; B_n), counted in vertices.
    pub min_open_vertices: u64,
    pub min_open_excess: i64,
    /// n + |B_n|, the lower bound for every open walk in a tree.
    pub tree_bound: u64,
}

/// Excess table for presentations whose Cayley graph is a tree: free groups
/// on free generators and (Z, {±1}), which is handled as the free group of
/// rank 1.
pub fn qh_refutation(model: &GroupModel, n_max: u32, limits: &Limits) -> Result<Vec<ExcessRow>> {
    let tree = match model {
        GroupModel::Free { .. } => model.clone(),
        GroupModel::Abelian(a) if a.rank() == 1 && a.moduli().is_empty() && a.is_standard() => {
            GroupModel::free(1)?
        }
        _ => {
            return Err(Error::ModelMismatch(format!(
                "refutation tables are for tree Cayley graphs, got {}",
                model.name()
            )))
        }
    };
    let e = tree.identity();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let ball = cayley_ball(&tree, n, limits)?;
        let set = ball.elements();
        let size = set.len() as u64;
        let closed = ts_tree(&tree, &e, &e, set)?;
        let mut min_open = u64::MAX;
        for x in set {
            min_open = min_open.min(ts_tree(&tree, &e, x, set)? + 1);
        }
        rows.push(ExcessRow {
            n,
            ball_size: size,
            closed_ts_edges: closed,
            closed_excess: closed as i64 - size as i64,
            min_open_vertices: min_open,
            min_open_excess: min_open as i64 - size as i64,
            tree_bound: u64::from(n) + size,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::with_cap(200_000)
    }

    #[test]
    fn z2_box_certificate() {
        let z2 = GroupModel::abelian(2, &[], &[vec![1, 0], vec![0, 1]]).unwrap();
        let cert = qh_certificate(&z2, 1, 2, QhStrategy::AbelianBox, &limits()).unwrap();
        assert_eq!(cert.witnesses[0].set.len(), 9);
        assert!(cert.achieved <= 2);
        verify_certificate(&z2, &cert, &limits()).unwrap();
    }

    #[test]
    fn z_with_one_and_two() {
        let z = GroupModel::abelian(1, &[], &[vec![1], vec![2]]).unwrap();
        let cert = qh_certificate(&z, 3, 1, QhStrategy::ExactBall, &limits()).unwrap();
        assert_eq!(cert.achieved, 1);
        verify_certificate(&z, &cert, &limits()).unwrap();
        let cert = qh_certificate(&z, 3, 2, QhStrategy::AbelianBox, &limits()).unwrap();
        verify_certificate(&z, &cert, &limits()).unwrap();
    }

    #[test]
    fn cube_of_ball_on_free_group() {
        let f2 = GroupModel::free(2).unwrap();
        let cert = qh_certificate(&f2, 1, 1, QhStrategy::CubeOfBall, &limits()).unwrap();
        assert_eq!(cert.witnesses[0].set.len(), 53);
        verify_certificate(&f2, &cert, &limits()).unwrap();
        assert!(qh_certificate(&f2, 1, 0, QhStrategy::CubeOfBall, &limits()).is_err());
    }

    #[test]
    fn tampered_certificates_fail() {
        let z2 = GroupModel::abelian(2, &[], &[vec![1, 0], vec![0, 1]]).unwrap();
        let mut cert = qh_certificate(&z2, 1, 2, QhStrategy::AbelianBox, &limits()).unwrap();
        cert.witnesses[0].walks[3].pop();
        assert!(verify_certificate(&z2, &cert, &limits()).is_err());
    }

    #[test]
    fn integers_have_growing_excess() {
        let z = GroupModel::abelian(1, &[], &[vec![1]]).unwrap();
        assert!(qh_certificate(&z, 1, 2, QhStrategy::AbelianBox, &limits()).is_err());
        let rows = qh_refutation(&z, 4, &limits()).unwrap();
        for r in &rows {
            let n = i64::from(r.n);
            assert_eq!(r.closed_ts_edges, 4 * r.n as u64);
            assert_eq!(r.closed_excess, 2 * n - 1);
            assert_eq!(r.min_open_excess, n);
            assert!(r.min_open_vertices >= r.tree_bound);
        }
    }
}
