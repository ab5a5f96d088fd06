use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::element::{Lamplighter, WreathElement, WreathGen};
use super::metric::WordMetric;
use crate::error::{invalid, Error, Result};
use crate::graphs::cayley_ball;
use crate::groups::GroupElement;
use crate::limits::Limits;

/// An exact value or a lower bound reached before a search limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DepthValue {
    Exact(u64),
    AtLeast(u64),
}

impl DepthValue {
    pub fn value(self) -> u64 {
        match self {
            DepthValue::Exact(v) | DepthValue::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, DepthValue::Exact(_))
    }
}

impl fmt::Display for DepthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthValue::Exact(v) => write!(f, "{v}"),
            DepthValue::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl Serialize for DepthValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DepthValue::Exact(v) => s.serialize_u64(*v),
            DepthValue::AtLeast(_) => s.serialize_str(&self.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub element: String,
    pub word_length: u64,
    pub depth: DepthValue,
    /// Only for dead ends whose depth is exact.
    pub retreat_depth: Option<DepthValue>,
    /// Generator labels of a shortest multiplier that increases length.
    pub witness: Option<Vec<String>>,
}

impl DepthReport {
    pub fn is_dead_end(&self) -> bool {
        self.depth.value() >= 1
    }
}

/// Source of exact word lengths for the search.
enum Lengths<'a> {
    Metric {
        metric: &'a WordMetric,
        memo: HashMap<WreathElement, u64>,
    },
    /// A fully enumerated ball: anything missing is longer than `radius`.
    Ball {
        known: &'a HashMap<WreathElement, u64>,
    },
}

impl Lengths<'_> {
    /// `None` means strictly longer than every element of the ball.
    fn get(&mut self, g: &WreathElement) -> Result<Option<u64>> {
        match self {
            Lengths::Metric { metric, memo } => {
                if let Some(&v) = memo.get(g) {
                    return Ok(Some(v));
                }
                let v = metric.exact_length(g)?;
                memo.insert(g.clone(), v);
                Ok(Some(v))
            }
            Lengths::Ball { known } => Ok(known.get(g).copied()),
        }
    }
}

struct Outcome {
    length: u64,
    depth: DepthValue,
    /// Largest achievable minimum level along a shortest path to a longer
    /// element, when one was found.
    best_floor: Option<u64>,
    witness: Option<Vec<usize>>,
}

struct Node {
    layer: u64,
    parent: usize,
    via: usize,
    /// Best minimum word length over shortest paths from g.
    floor: u64,
    /// `None` for elements longer than g.
    length: Option<u64>,
}

/// Layered BFS from g over right multipliers. Layer k holds the elements gh
/// with ‖h‖ = k.
fn search(
    group: &Lamplighter,
    lengths: &mut Lengths<'_>,
    g: &WreathElement,
    k_max: u64,
    cap: usize,
) -> Result<Outcome> {
    let length = lengths
        .get(g)?
        .ok_or_else(|| invalid("element lies outside the enumerated ball"))?;
    let mut index: HashMap<WreathElement, usize> = HashMap::from([(g.clone(), 0)]);
    let mut nodes = vec![Node {
        layer: 0,
        parent: usize::MAX,
        via: usize::MAX,
        floor: length,
        length: Some(length),
    }];
    let mut elems = vec![g.clone()];
    let mut layer: Vec<usize> = vec![0];
    for k in 1..=k_max {
        let mut next: Vec<usize> = Vec::new();
        let mut longer: Vec<usize> = Vec::new();
        for &p in &layer {
            let pf = nodes[p].floor;
            for (gi, s) in group.generators().iter().enumerate() {
                let z = group.step(&elems[p], s);
                if let Some(&i) = index.get(&z) {
                    let node = &mut nodes[i];
                    if node.layer == k {
                        let cand = node.length.map_or(pf, |l| pf.min(l));
                        node.floor = node.floor.max(cand);
                    }
                    continue;
                }
                let len = lengths.get(&z)?.filter(|&v| v <= length);
                let i = nodes.len();
                nodes.push(Node {
                    layer: k,
                    parent: p,
                    via: gi,
                    floor: len.map_or(pf, |l| pf.min(l)),
                    length: len,
                });
                index.insert(z.clone(), i);
                elems.push(z);
                if len.is_some() {
                    next.push(i);
                } else {
                    longer.push(i);
                }
            }
        }
        if !longer.is_empty() {
            let end = *longer
                .iter()
                .max_by_key(|&&i| (nodes[i].floor, std::cmp::Reverse(i)))
                .unwrap();
            let mut word = Vec::new();
            let mut cur = end;
            while cur != 0 {
                word.push(nodes[cur].via);
                cur = nodes[cur].parent;
            }
            word.reverse();
            return Ok(Outcome {
                length,
                depth: DepthValue::Exact(k - 1),
                best_floor: Some(nodes[end].floor),
                witness: Some(word),
            });
        }
        if elems.len() > cap {
            return Err(Error::BoundExceeded {
                what: format!("depth search frontier ({} elements)", elems.len()),
                lower_bound: k,
            });
        }
        layer = next;
    }
    Ok(Outcome {
        length,
        depth: DepthValue::AtLeast(k_max),
        best_floor: None,
        witness: None,
    })
}

fn report(group: &Lamplighter, g: &WreathElement, out: &Outcome) -> DepthReport {
    let retreat = match (out.depth, out.best_floor) {
        (DepthValue::Exact(d), Some(floor)) if d >= 1 => {
            Some(DepthValue::Exact(out.length - floor))
        }
        (DepthValue::AtLeast(d), _) if d >= 1 => Some(DepthValue::AtLeast(0)),
        _ => None,
    };
    DepthReport {
        element: group.format(g),
        word_length: out.length,
        depth: out.depth,
        retreat_depth: retreat,
        witness: out.witness.as_ref().map(|w| {
            w.iter()
                .map(|&i| group.generator_label(&group.generators()[i]))
                .collect()
        }),
    }
}

fn require_exact(metric: &WordMetric) -> Result<()> {
    if !metric.is_exact() {
        return Err(invalid(format!(
            "backend {:?} is not exact on {}; depth needs exact lengths",
            metric.backend(),
            metric.group().name()
        )));
    }
    Ok(())
}

/// True iff no single generator increases the word length of g.
pub fn is_dead_end(metric: &WordMetric, g: &WreathElement) -> Result<bool> {
    require_exact(metric)?;
    let length = metric.exact_length(g)?;
    for h in metric.group().neighbors(g) {
        if metric.exact_length(&h)? > length {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest n ≤ k_max with ‖gh‖ ≤ ‖g‖ for every ‖h‖ ≤ n.
pub fn depth(
    metric: &WordMetric,
    g: &WreathElement,
    k_max: u64,
    limits: &Limits,
) -> Result<DepthReport> {
    require_exact(metric)?;
    metric.group().check(g)?;
    let mut lengths = Lengths::Metric {
        metric,
        memo: HashMap::new(),
    };
    let out = search(metric.group(), &mut lengths, g, k_max, limits.frontier_cap)?;
    Ok(report(metric.group(), g, &out))
}

/// Smallest k such that a shortest path from g to an element of length
/// ‖g‖ + 1 keeps word length ≥ ‖g‖ − k throughout. Only the nearest longer
/// elements are considered, so the value bounds the retreat depth from above.
pub fn retreat_depth(
    metric: &WordMetric,
    g: &WreathElement,
    k_max: u64,
    limits: &Limits,
) -> Result<DepthValue> {
    let r = depth(metric, g, k_max, limits)?;
    if !r.is_dead_end() {
        return Err(invalid(format!("{} is not a dead end", r.element)));
    }
    Ok(r.retreat_depth.expect("dead ends carry a retreat depth"))
}

/// (f, e) with f equal to the deep lamp on `set` and trivial elsewhere.
pub fn witness_on_set(group: &Lamplighter, set: &[GroupElement]) -> Result<WreathElement> {
    let a = group.deep_lamp();
    let pairs: Vec<(GroupElement, usize)> = set.iter().map(|y| (y.clone(), a)).collect();
    let mut seen = std::collections::HashSet::new();
    if !set.iter().all(|y| seen.insert(y)) {
        return Err(invalid("witness set has repeated elements"));
    }
    group.element(&pairs, group.base().identity())
}

/// (f, e) with f equal to the deep lamp on the base ball of radius n.
pub fn ball_witness(group: &Lamplighter, n: u32, limits: &Limits) -> Result<WreathElement> {
    let ball = cayley_ball(group.base(), n, limits)?;
    witness_on_set(group, ball.elements())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthRow {
    pub element: String,
    pub word_length: u64,
    pub depth: DepthValue,
    pub retreat_depth: Option<DepthValue>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellSummary {
    pub word_length: u64,
    pub elements: usize,
    pub dead_ends: usize,
    pub max_depth: DepthValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthProfile {
    pub group: String,
    /// Radius actually enumerated; below the request when `partial`.
    pub radius: u64,
    pub k_max: u64,
    pub partial: bool,
    pub rows: Vec<DepthRow>,
    pub shells: Vec<ShellSummary>,
}

impl DepthProfile {
    /// Largest depth over all rows.
    pub fn max_depth(&self) -> DepthValue {
        self.shells
            .iter()
            .map(|s| s.max_depth)
            .max_by_key(|d| (d.value(), !d.is_exact()))
            .unwrap_or(DepthValue::Exact(0))
    }

    /// Largest depth over rows of word length at most `r`.
    pub fn max_depth_within(&self, r: u64) -> DepthValue {
        self.shells
            .iter()
            .filter(|s| s.word_length <= r)
            .map(|s| s.max_depth)
            .max_by_key(|d| (d.value(), !d.is_exact()))
            .unwrap_or(DepthValue::Exact(0))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("element,word_length,depth,retreat_depth,flags\n");
        for r in &self.rows {
            let retreat = r.retreat_depth.map(|d| d.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&r.element),
                r.word_length,
                r.depth,
                retreat,
                r.flags.join("|")
            ));
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("word_length,elements,dead_ends,max_depth\n");
        for s in &self.shells {
            out.push_str(&format!(
                "{},{},{},{}\n",
                s.word_length, s.elements, s.dead_ends, s.max_depth
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The elements of A ≀ B of length ≤ radius in BFS order with their lengths.
/// Stops early, returning the last complete radius, once `cap` is exceeded.
pub fn enumerate_ball(
    group: &Lamplighter,
    radius: u64,
    cap: usize,
) -> (Vec<WreathElement>, HashMap<WreathElement, u64>, u64) {
    let mut order = vec![group.identity()];
    let mut known = HashMap::from([(group.identity(), 0u64)]);
    let mut start = 0;
    for r in 1..=radius {
        let end = order.len();
        let mut added = Vec::new();
        for i in start..end {
            for h in group.neighbors(&order[i]) {
                if !known.contains_key(&h) {
                    known.insert(h.clone(), r);
                    added.push(h);
                }
            }
        }
        if end + added.len() > cap {
            for h in &added {
                known.remove(h);
            }
            return (order, known, r - 1);
        }
        order.extend(added);
        start = end;
    }
    (order, known, radius)
}

/// Depth of every element of word length ≤ radius, searched up to k_max.
/// Lengths come from the enumeration itself, so no backend is needed.
pub fn depth_profile(
    group: &Lamplighter,
    radius: u64,
    k_max: u64,
    limits: &Limits,
) -> Result<DepthProfile> {
    let (order, known, reached) = enumerate_ball(group, radius, limits.vertex_cap);
    let mut partial = reached < radius;
    let mut lengths = Lengths::Ball { known: &known };
    let mut rows = Vec::with_capacity(order.len());
    let mut shells: Vec<ShellSummary> = (0..=reached)
        .map(|l| ShellSummary {
            word_length: l,
            elements: 0,
            dead_ends: 0,
            max_depth: DepthValue::Exact(0),
        })
        .collect();
    for g in &order {
        let mut flags = Vec::new();
        let (depth, retreat, length) =
            match search(group, &mut lengths, g, k_max, limits.frontier_cap) {
                Ok(out) => {
                    let r = report(group, g, &out);
                    (r.depth, r.retreat_depth, r.word_length)
                }
                Err(Error::BoundExceeded { lower_bound, .. }) => {
                    partial = true;
                    flags.push("search_capped".to_string());
                    (DepthValue::AtLeast(lower_bound), None, known[g])
                }
                Err(e) => return Err(e),
            };
        if depth.value() >= 1 {
            flags.push("dead_end".to_string());
        }
        if !depth.is_exact() {
            flags.push("lower_bound".to_string());
        }
        let shell = &mut shells[length as usize];
        shell.elements += 1;
        if depth.value() >= 1 {
            shell.dead_ends += 1;
        }
        if (depth.value(), !depth.is_exact())
            > (shell.max_depth.value(), !shell.max_depth.is_exact())
        {
            shell.max_depth = depth;
        }
        rows.push(DepthRow {
            element: group.format(g),
            word_length: length,
            depth,
            retreat_depth: retreat,
            flags,
        });
    }
    Ok(DepthProfile {
        group: group.name(),
        radius: reached,
        k_max,
        partial,
        rows,
        shells,
    })
}

impl Lamplighter {
    /// `t<v>` for lamp generators, the base element's text for moves.
    pub fn generator_label(&self, s: &WreathGen) -> String {
        match s {
            WreathGen::Lamp(v) => format!("t{v}"),
            WreathGen::Move(x) => self.base().format(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupModel;

    fn z() -> Lamplighter {
        Lamplighter::over(GroupModel::abelian(1, &[], &[vec![1]]).unwrap()).unwrap()
    }

    #[test]
    fn identity_is_not_a_dead_end() {
        let w = z();
        let m = WordMetric::with_default_backend(&w, Limits::default()).unwrap();
        assert!(!is_dead_end(&m, &w.identity()).unwrap());
        let r = depth(&m, &w.identity(), 3, &Limits::default()).unwrap();
        assert_eq!(r.depth, DepthValue::Exact(0));
        assert_eq!(r.witness.as_ref().map(Vec::len), Some(1));
        assert!(retreat_depth(&m, &w.identity(), 3, &Limits::default()).is_err());
    }

    #[test]
    fn witness_over_the_line() {
        let w = z();
        let m = WordMetric::with_default_backend(&w, Limits::default()).unwrap();
        let g = ball_witness(&w, 2, &Limits::default()).unwrap();
        assert_eq!(g.lamps.len(), 5);
        let r = depth(&m, &g, 6, &Limits::default()).unwrap();
        assert!(r.depth.is_exact() && r.depth.value() >= 1, "{r:?}");
        let retreat = r.retreat_depth.unwrap();
        assert!(retreat.value() >= 1 && retreat.value() <= r.depth.value());
        assert_eq!(
            ball_witness(&w, 0, &Limits::default()).unwrap().lamps.len(),
            1
        );
    }

    #[test]
    fn profile_of_radius_zero() {
        let p = depth_profile(&z(), 0, 4, &Limits::default()).unwrap();
        assert_eq!(p.rows.len(), 1);
        assert_eq!(p.rows[0].depth, DepthValue::Exact(0));
        assert!(!p.partial);
    }

    #[test]
    fn profile_matches_metric_search() {
        let w = z();
        let m = WordMetric::with_default_backend(&w, Limits::default()).unwrap();
        let p = depth_profile(&w, 6, 8, &Limits::default()).unwrap();
        for row in p.rows.iter().filter(|r| r.word_length <= 6).step_by(7) {
            let g = w.parse(&row.element).unwrap();
            let r = depth(&m, &g, 8, &Limits::default()).unwrap();
            assert_eq!(
                (r.word_length, r.depth, r.retreat_depth),
                (row.word_length, row.depth, row.retreat_depth)
            );
        }
    }

    #[test]
    fn capped_profile_is_partial() {
        let p = depth_profile(&z(), 10, 4, &Limits::with_cap(50)).unwrap();
        assert!(p.partial && p.radius < 10);
    }
}
