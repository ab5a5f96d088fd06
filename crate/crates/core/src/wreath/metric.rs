use num_traits::ToPrimitive;
use serde::Serialize;

use super::element::{Lamplighter, WreathElement};
use crate::error::{invalid, resource, Error, Result};
use crate::graphs::{cayley_ball, FiniteGraph};
use crate::groups::{GroupElement, GroupModel};
use crate::limits::Limits;
use crate::tsp::{solve_exact, ts_tree, PetalSolver, TspInstance};

/// How the TS term of the word length is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MetricBackend {
    /// Closed form on the Cayley tree of a free group.
    TreeClosedForm,
    /// Petal recursion on a free product of finite groups.
    FreeProductPetal,
    /// Exact TSP on the bounding box, for Z^r × finite with standard
    /// generators.
    AbelianBox,
    /// Exact TSP on the ball of radius (farthest point + slack). An upper
    /// bound, exact when the ball is the whole group.
    GenericBallRestricted { slack: u32 },
}

impl MetricBackend {
    pub fn parse(name: &str) -> Result<MetricBackend> {
        let name = name.trim();
        match name {
            "tree" => Ok(MetricBackend::TreeClosedForm),
            "petal" => Ok(MetricBackend::FreeProductPetal),
            "box" => Ok(MetricBackend::AbelianBox),
            "generic" => Ok(MetricBackend::GenericBallRestricted { slack: 2 }),
            _ => match name.strip_prefix("generic:").map(|s| s.parse::<u32>()) {
                Some(Ok(slack)) => Ok(MetricBackend::GenericBallRestricted { slack }),
                _ => Err(invalid(format!(
                    "unknown backend {name:?}; expected tree, petal, box, generic or generic:<slack>"
                ))),
            },
        }
    }

    /// The exact backend for a model, or the generic one when none applies.
    pub fn default_for(base: &GroupModel) -> MetricBackend {
        match base {
            GroupModel::Free { .. } => MetricBackend::TreeClosedForm,
            GroupModel::FreeProduct { .. } => MetricBackend::FreeProductPetal,
            GroupModel::Abelian(a) if a.is_standard() => MetricBackend::AbelianBox,
            _ => MetricBackend::GenericBallRestricted { slack: 2 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WordLength {
    pub value: u64,
    /// False when `value` is only an upper bound.
    pub exact: bool,
}

/// Word length in A ≀ B for S_std: Σ ‖f(y)‖_A + TS(e -> x; supp f).
#[derive(Debug, Clone)]
pub struct WordMetric {
    group: Lamplighter,
    backend: MetricBackend,
    petal: Option<PetalSolver>,
    limits: Limits,
}

impl WordMetric {
    pub fn new(group: &Lamplighter, backend: MetricBackend, limits: Limits) -> Result<Self> {
        let base = group.base();
        let ok = match backend {
            MetricBackend::TreeClosedForm => matches!(base, GroupModel::Free { .. }),
            MetricBackend::FreeProductPetal => matches!(base, GroupModel::FreeProduct { .. }),
            MetricBackend::AbelianBox => matches!(base, GroupModel::Abelian(a) if a.is_standard()),
            MetricBackend::GenericBallRestricted { .. } => true,
        };
        if !ok {
            return Err(Error::ModelMismatch(format!(
                "backend {backend:?} does not apply to base {}",
                base.name()
            )));
        }
        let petal = match backend {
            MetricBackend::FreeProductPetal => Some(PetalSolver::new(base)?),
            _ => None,
        };
        Ok(WordMetric {
            group: group.clone(),
            backend,
            petal,
            limits,
        })
    }

    pub fn with_default_backend(group: &Lamplighter, limits: Limits) -> Result<Self> {
        WordMetric::new(group, MetricBackend::default_for(group.base()), limits)
    }

    pub fn group(&self) -> &Lamplighter {
        &self.group
    }

    pub fn backend(&self) -> MetricBackend {
        self.backend
    }

    /// True when every value is exact. The generic backend is exact only on
    /// finite bases.
    pub fn is_exact(&self) -> bool {
        match self.backend {
            MetricBackend::GenericBallRestricted { .. } => self.group.base().order().is_some(),
            _ => true,
        }
    }

    pub fn lamp_cost(&self, g: &WreathElement) -> u64 {
        g.lamps
            .values()
            .map(|&v| u64::from(self.group.lamps().norm(v)))
            .sum()
    }

    pub fn word_length(&self, g: &WreathElement) -> Result<WordLength> {
        self.group.check(g)?;
        let (ts, exact) = self.ts_term(g)?;
        Ok(WordLength {
            value: self.lamp_cost(g) + ts,
            exact,
        })
    }

    /// Exact word length, failing for inexact backends.
    pub fn exact_length(&self, g: &WreathElement) -> Result<u64> {
        let w = self.word_length(g)?;
        if !w.exact {
            return Err(invalid(format!(
                "backend {:?} gave only an upper bound",
                self.backend
            )));
        }
        Ok(w.value)
    }

    /// A walk e -> x through supp f realizing the TS term, as base elements.
    /// Solved on a ball around e wide enough to hold an optimal walk, and
    /// checked against `word_length`.
    pub fn ts_walk(&self, g: &WreathElement) -> Result<Vec<GroupElement>> {
        let base = self.group.base();
        let support: Vec<GroupElement> = g.lamps.keys().cloned().collect();
        let mut far = 0u64;
        for x in support.iter().chain([&g.position]) {
            far = far.max(base.word_length(x)?);
        }
        let slack = match (self.backend, base) {
            (MetricBackend::GenericBallRestricted { slack }, _) => u64::from(slack),
            (_, GroupModel::FreeProduct { h, k }) => h.order().max(k.order()) as u64,
            (_, GroupModel::Abelian(a)) => far * a.dim().saturating_sub(1) as u64,
            _ => 0,
        };
        let ball = cayley_ball(base, (far + slack) as u32, &self.limits)?;
        let vertex = |x: &GroupElement| {
            ball.vertex_of(x)
                .ok_or_else(|| Error::Internal("point outside its ball".into()))
        };
        let required: Vec<usize> = support.iter().map(vertex).collect::<Result<_>>()?;
        let sol = solve_exact(&TspInstance::new(
            &ball.graph,
            vertex(&base.identity())?,
            vertex(&g.position)?,
            required,
        ))?;
        let (expected, _) = self.ts_term(g)?;
        if sol.length != expected {
            return Err(Error::Verification(format!(
                "walk of length {} does not match TS term {expected}",
                sol.length
            )));
        }
        Ok(sol
            .walk
            .iter()
            .map(|&v| ball.element_of(v).clone())
            .collect())
    }

    fn ts_term(&self, g: &WreathElement) -> Result<(u64, bool)> {
        let base = self.group.base();
        let e = base.identity();
        let support: Vec<GroupElement> = g.lamps.keys().cloned().collect();
        match self.backend {
            MetricBackend::TreeClosedForm => Ok((ts_tree(base, &e, &g.position, &support)?, true)),
            MetricBackend::FreeProductPetal => Ok((
                self.petal.as_ref().unwrap().ts(&e, &g.position, &support)?,
                true,
            )),
            MetricBackend::AbelianBox => Ok((self.ts_box(g, &support)?, true)),
            MetricBackend::GenericBallRestricted { slack } => self.ts_ball(g, &support, slack),
        }
    }

    fn ts_box(&self, g: &WreathElement, support: &[GroupElement]) -> Result<u64> {
        let GroupModel::Abelian(a) = self.group.base() else {
            unreachable!("checked in new")
        };
        let coords = |x: &GroupElement| -> Vec<i64> {
            let GroupElement::Abelian(v) = x else {
                unreachable!("checked element")
            };
            v.free
                .iter()
                .map(|c| c.to_i64().expect("coordinates fit in i64"))
                .chain(v.torsion.iter().map(|&q| q as i64))
                .collect()
        };
        let points: Vec<Vec<i64>> = support.iter().chain([&g.position]).map(coords).collect();
        let rank = a.rank();
        let dim = a.dim();
        // Free coordinates are clamped to the range spanned by e, x and the
        // support; torsion coordinates keep their whole cycle.
        let mut lo = vec![0i64; dim];
        let mut sides = vec![0usize; dim];
        for i in 0..dim {
            if i < rank {
                let min = points.iter().map(|p| p[i]).min().unwrap().min(0);
                let max = points.iter().map(|p| p[i]).max().unwrap().max(0);
                lo[i] = min;
                sides[i] = (max - min + 1) as usize;
            } else {
                sides[i] = a.moduli()[i - rank] as usize;
            }
        }
        let total = sides.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        match total {
            Some(t) if t <= self.limits.vertex_cap => {}
            _ => return Err(resource("bounding box vertices", self.limits.vertex_cap)),
        }
        let mut graph = FiniteGraph::path(1);
        for (i, &s) in sides.iter().enumerate() {
            let factor = if i >= rank && s >= 3 {
                FiniteGraph::cycle(s)
            } else {
                FiniteGraph::path(s)
            };
            graph = crate::graphs::product_graph(&graph, &factor);
        }
        let index = |p: &[i64]| -> usize {
            (0..dim).fold(0, |acc, i| acc * sides[i] + (p[i] - lo[i]) as usize)
        };
        let start = index(&vec![0; dim]);
        let end = index(points.last().unwrap());
        let required: Vec<usize> = points[..points.len() - 1]
            .iter()
            .map(|p| index(p))
            .collect();
        Ok(solve_exact(&TspInstance::new(&graph, start, end, required))?.length)
    }

    fn ts_ball(
        &self,
        g: &WreathElement,
        support: &[GroupElement],
        slack: u32,
    ) -> Result<(u64, bool)> {
        let base = self.group.base();
        let mut far = 0u64;
        for x in support.iter().chain([&g.position]) {
            far = far.max(base.word_length(x)?);
        }
        let ball = cayley_ball(base, far as u32 + slack, &self.limits)?;
        let vertex = |x: &GroupElement| {
            ball.vertex_of(x)
                .ok_or_else(|| Error::Internal("point outside its ball".into()))
        };
        let start = vertex(&base.identity())?;
        let end = vertex(&g.position)?;
        let required: Vec<usize> = support.iter().map(vertex).collect::<Result<_>>()?;
        let sol = solve_exact(&TspInstance::new(&ball.graph, start, end, required))?;
        Ok((sol.length, ball.is_saturated()))
    }
}
