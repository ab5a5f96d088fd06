//! TS values in Cay(H*K, S_H ∪ S_K) by recursion over the tree of factor
//! copies.
//!
//! A copy of factor X is a coset `p·X` where the word `p` does not end in an
//! X-letter. Deleting the X-edges of the copy splits the Cayley graph into
//! |X| petals, one hanging off each vertex `p·x`. A word lies in the petal of
//! `p·x` when it extends `p` by the X-letter `x`; everything else lies in the
//! petal of `p` itself.

use std::collections::BTreeMap;

use super::exact::{solve_exact, TspInstance};
use crate::error::{Error, Result};
use crate::graphs::{finite_cayley_graph, FiniteGraph};
use crate::groups::{FiniteGroup, GroupElement, GroupModel, Letter, Side};

/// Factors up to this order get a full TS table.
const TABLE_ORDER: usize = 12;

#[derive(Debug, Clone)]
struct FactorTsp {
    group: FiniteGroup,
    graph: FiniteGraph,
    /// `table[(s << n | mask) * n + t]` = TS(s -> t; mask) in edges.
    table: Option<Vec<u16>>,
}

impl FactorTsp {
    fn new(group: &FiniteGroup) -> FactorTsp {
        let graph = finite_cayley_graph(group);
        let n = group.order();
        let table = (n <= TABLE_ORDER).then(|| tabulate(group));
        FactorTsp {
            group: group.clone(),
            graph,
            table,
        }
    }

    fn ts(&self, s: usize, t: usize, required: &[usize]) -> Result<u64> {
        match &self.table {
            Some(table) => {
                let n = self.group.order();
                let mask = required.iter().fold(0usize, |m, &x| m | (1 << x));
                Ok(u64::from(table[((s << n) | mask) * n + t]))
            }
            None => Ok(solve_exact(&TspInstance::new(
                &self.graph,
                s,
                t,
                required.iter().copied(),
            ))?
            .length),
        }
    }
}

fn tabulate(group: &FiniteGroup) -> Vec<u16> {
    const INF: u16 = u16::MAX / 4;
    let n = group.order();
    let subsets = 1usize << n;
    let d: Vec<Vec<u16>> = (0..n)
        .map(|x| (0..n).map(|y| group.distance(x, y) as u16).collect())
        .collect();
    let mut table = vec![0u16; n * subsets * n];
    let mut reach = vec![INF; subsets * n];
    for s in 0..n {
        reach.fill(INF);
        for i in 0..n {
            reach[(1 << i) * n + i] = d[s][i];
        }
        for mask in 1..subsets {
            for i in 0..n {
                let c = reach[mask * n + i];
                if mask & (1 << i) == 0 || c >= INF {
                    continue;
                }
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        let slot = &mut reach[(mask | (1 << j)) * n + j];
                        *slot = (*slot).min(c + d[i][j]);
                    }
                }
            }
        }
        for mask in 0..subsets {
            for t in 0..n {
                let v = if mask == 0 {
                    d[s][t]
                } else {
                    (0..n)
                        .filter(|&i| mask & (1 << i) != 0)
                        .map(|i| reach[mask * n + i] + d[i][t])
                        .min()
                        .expect("nonempty mask")
                };
                table[((s << n) | mask) * n + t] = v;
            }
        }
    }
    table
}

/// One petal of a factor copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Petal {
    /// Index of the factor element `x` with attachment vertex `p·x`.
    pub factor_elem: usize,
    pub attachment: GroupElement,
    pub support: Vec<GroupElement>,
}

/// The |X| petals of the X-copy through a vertex, indexed by factor element;
/// petal 0 (the factor identity) is the one on the identity side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetalDecomposition {
    pub side: Side,
    pub anchor: GroupElement,
    pub petals: Vec<Petal>,
}

/// Exact TS solver for a free product of two finite groups.
#[derive(Debug, Clone)]
pub struct PetalSolver {
    model: GroupModel,
    h: FactorTsp,
    k: FactorTsp,
}

impl PetalSolver {
    pub fn new(model: &GroupModel) -> Result<Self> {
        match model {
            GroupModel::FreeProduct { h, k } => Ok(PetalSolver {
                model: model.clone(),
                h: FactorTsp::new(h),
                k: FactorTsp::new(k),
            }),
            other => Err(Error::ModelMismatch(format!(
                "petal recursion needs a free product, got {}",
                other.name()
            ))),
        }
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    fn factor(&self, side: Side) -> &FactorTsp {
        match side {
            Side::H => &self.h,
            Side::K => &self.k,
        }
    }

    fn identity(&self, side: Side) -> usize {
        self.factor(side).group.identity()
    }

    fn word<'a>(&self, g: &'a GroupElement) -> Result<&'a [Letter]> {
        self.model.check(g)?;
        match g {
            GroupElement::FreeProduct(w) => Ok(w),
            _ => unreachable!("checked against a free-product model"),
        }
    }

    /// Splits `w` as anchor·x for the `side`-copy through it.
    fn copy_of<'a>(&self, w: &'a [Letter], side: Side) -> (&'a [Letter], usize) {
        match w.last() {
            Some(l) if l.side == side => (&w[..w.len() - 1], l.elem as usize),
            _ => (w, self.identity(side)),
        }
    }

    fn route(&self, w: &[Letter], anchor: &[Letter], side: Side) -> usize {
        match w.get(anchor.len()) {
            Some(l) if l.side == side && w.starts_with(anchor) => l.elem as usize,
            _ => self.identity(side),
        }
    }

    fn vertex(&self, anchor: &[Letter], side: Side, x: usize) -> Vec<Letter> {
        let mut v = anchor.to_vec();
        if x != self.identity(side) {
            v.push(Letter {
                side,
                elem: x as u32,
            });
        }
        v
    }

    /// The petals of the `side`-copy through `vertex`, with `support` routed.
    pub fn petal_decomposition(
        &self,
        vertex: &GroupElement,
        side: Side,
        support: &[GroupElement],
    ) -> Result<PetalDecomposition> {
        let v = self.word(vertex)?;
        let (anchor, _) = self.copy_of(v, side);
        let n = self.factor(side).group.order();
        let mut petals: Vec<Petal> = (0..n)
            .map(|x| Petal {
                factor_elem: x,
                attachment: GroupElement::FreeProduct(self.vertex(anchor, side, x)),
                support: Vec::new(),
            })
            .collect();
        for g in support {
            let w = self.word(g)?;
            petals[self.route(w, anchor, side)].support.push(g.clone());
        }
        Ok(PetalDecomposition {
            side,
            anchor: GroupElement::FreeProduct(anchor.to_vec()),
            petals,
        })
    }

    /// TS(start -> end; required) in edges.
    pub fn ts(
        &self,
        start: &GroupElement,
        end: &GroupElement,
        required: &[GroupElement],
    ) -> Result<u64> {
        let s = self.word(start)?;
        let t = self.word(end)?;
        let items: Vec<&[Letter]> = required
            .iter()
            .map(|g| self.word(g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|w| *w != s)
            .collect();
        let budget = items
            .iter()
            .map(|w| w.len())
            .max()
            .unwrap_or(0)
            .max(t.len())
            + s.len()
            + 2;

        let (anchor_h, x_h) = self.copy_of(s, Side::H);
        let (h_side, k_side): (Vec<&[Letter]>, Vec<&[Letter]>) = items
            .into_iter()
            .partition(|w| self.route(w, anchor_h, Side::H) != x_h);
        if t == s {
            return Ok(self.closed(s, Side::H, h_side, budget)?
                + self.closed(s, Side::K, k_side, budget)?);
        }
        if self.route(t, anchor_h, Side::H) != x_h {
            Ok(self.closed(s, Side::K, k_side, budget)?
                + self.open(s, Side::H, t, h_side, budget)?)
        } else {
            Ok(self.closed(s, Side::H, h_side, budget)?
                + self.open(s, Side::K, t, k_side, budget)?)
        }
    }

    /// Groups `items` by petal of the `side`-copy through `v`; the petal of
    /// `v` itself may only contain `v`.
    #[allow(clippy::type_complexity)]
    fn group<'v, 'a>(
        &self,
        v: &'v [Letter],
        side: Side,
        items: Vec<&'a [Letter]>,
    ) -> Result<(&'v [Letter], usize, BTreeMap<usize, Vec<&'a [Letter]>>)> {
        let (anchor, x_v) = self.copy_of(v, side);
        let mut groups: BTreeMap<usize, Vec<&[Letter]>> = BTreeMap::new();
        for w in items {
            let r = self.route(w, anchor, side);
            if r == x_v {
                if w != v {
                    return Err(Error::Internal(
                        "malformed support: item routed into the entry petal".into(),
                    ));
                }
                continue;
            }
            groups.entry(r).or_default().push(w);
        }
        Ok((anchor, x_v, groups))
    }

    /// Closed walk from `v` around the `side`-copy through it, covering
    /// `items`, which lie in petals other than that of `v`.
    fn closed(
        &self,
        v: &[Letter],
        side: Side,
        items: Vec<&[Letter]>,
        budget: usize,
    ) -> Result<u64> {
        if items.is_empty() {
            return Ok(0);
        }
        let budget = budget.checked_sub(1).ok_or_else(|| {
            Error::Internal("petal recursion deeper than the support allows".into())
        })?;
        let (anchor, x_v, groups) = self.group(v, side, items)?;
        let mut weights = 0;
        for (&x, group) in &groups {
            weights += self.excursion(anchor, side, x, group, budget)?;
        }
        let required: Vec<usize> = groups.keys().copied().collect();
        Ok(self.factor(side).ts(x_v, x_v, &required)? + weights)
    }

    /// Walk from `v` to `target` covering `items`, where `target` lies in a
    /// petal of the `side`-copy other than that of `v`.
    fn open(
        &self,
        v: &[Letter],
        side: Side,
        target: &[Letter],
        items: Vec<&[Letter]>,
        budget: usize,
    ) -> Result<u64> {
        let budget = budget.checked_sub(1).ok_or_else(|| {
            Error::Internal("petal recursion deeper than the support allows".into())
        })?;
        let (anchor, x_v, mut groups) = self.group(v, side, items)?;
        let x_t = self.route(target, anchor, side);
        if x_t == x_v {
            return Err(Error::Internal(
                "open walk target lies in the entry petal".into(),
            ));
        }
        let last = groups.remove(&x_t).unwrap_or_default();
        let mut weights = 0;
        for (&x, group) in &groups {
            weights += self.excursion(anchor, side, x, group, budget)?;
        }
        let mut required: Vec<usize> = groups.keys().copied().collect();
        required.push(x_t);
        let through = self.factor(side).ts(x_v, x_t, &required)?;

        let u = self.vertex(anchor, side, x_t);
        let rest: Vec<&[Letter]> = last.into_iter().filter(|w| *w != u.as_slice()).collect();
        let tail = if target == u.as_slice() {
            self.closed(&u, side.other(), rest, budget)?
        } else {
            self.open(&u, side.other(), target, rest, budget)?
        };
        Ok(through + weights + tail)
    }

    /// Cost of the closed excursion into the petal attached at `anchor·x`.
    fn excursion(
        &self,
        anchor: &[Letter],
        side: Side,
        x: usize,
        group: &[&[Letter]],
        budget: usize,
    ) -> Result<u64> {
        let u = self.vertex(anchor, side, x);
        let rest: Vec<&[Letter]> = group
            .iter()
            .copied()
            .filter(|w| *w != u.as_slice())
            .collect();
        self.closed(&u, side.other(), rest, budget)
    }
}

/// TS(start -> end; required) in a free product, in edges.
pub fn ts_free_product(
    model: &GroupModel,
    start: &GroupElement,
    end: &GroupElement,
    required: &[GroupElement],
) -> Result<u64> {
    PetalSolver::new(model)?.ts(start, end, required)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::cayley_ball;
    use crate::limits::Limits;

    fn model(h: usize, k: usize) -> GroupModel {
        GroupModel::free_product(
            FiniteGroup::cycle(h).unwrap(),
            FiniteGroup::cycle(k).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn octagon_at_identity() {
        let m = model(8, 2);
        let e = m.identity();
        assert_eq!(ts_free_product(&m, &e, &e, &[e.clone()]).unwrap(), 0);
        let octagon: Vec<_> = (0..8).map(|i| m.parse(&format!("h{i}")).unwrap()).collect();
        assert_eq!(ts_free_product(&m, &e, &e, &octagon).unwrap(), 8);
    }

    #[test]
    fn routes_support_into_petals() {
        let m = model(8, 2);
        let solver = PetalSolver::new(&m).unwrap();
        let g = m.parse("h1.k1.h2").unwrap();
        let d = solver
            .petal_decomposition(&m.identity(), Side::H, &[g.clone()])
            .unwrap();
        assert_eq!(d.petals.len(), 8);
        assert_eq!(d.petals[1].support, vec![g]);
        assert_eq!(d.petals[1].attachment, m.parse("h1").unwrap());
        assert!(d
            .petals
            .iter()
            .filter(|p| p.factor_elem != 1)
            .all(|p| p.support.is_empty()));
    }

    #[test]
    fn matches_exact_solver_on_ball() {
        // Small supports near the identity, compared against the Steiner DP on
        // a ball large enough to contain every optimal walk.
        let m = model(4, 2);
        let ball = cayley_ball(&m, 5, &Limits::default()).unwrap();
        let inner: Vec<usize> = (0..ball.len()).filter(|&v| ball.layer(v) <= 3).collect();
        let solver = PetalSolver::new(&m).unwrap();
        let mut state = 7u64;
        for _ in 0..200 {
            let mut pick = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                inner[(state >> 33) as usize % inner.len()]
            };
            let (s, t) = (pick(), pick());
            let req: Vec<usize> = (0..4).map(|_| pick()).collect();
            let elems: Vec<GroupElement> =
                req.iter().map(|&v| ball.element_of(v).clone()).collect();
            let expected = solve_exact(&TspInstance::new(&ball.graph, s, t, req.iter().copied()))
                .unwrap()
                .length;
            let got = solver
                .ts(ball.element_of(s), ball.element_of(t), &elems)
                .unwrap();
            assert_eq!(got, expected, "s={s} t={t} req={req:?}");
        }
    }
}
