use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupModel};

/// TS(u -> v; H) in the Cayley tree of a free group with free generators:
/// every edge of the hull of H not on the u-v geodesic is walked twice, the
/// geodesic edges once.
///
/// An edge is named by the reduced word of its endpoint farther from e.
pub fn ts_tree(
    model: &GroupModel,
    u: &GroupElement,
    v: &GroupElement,
    h: &[GroupElement],
) -> Result<u64> {
    if !matches!(model, GroupModel::Free { .. }) {
        return Err(Error::ModelMismatch(format!(
            "tree formula needs a free group, got {}",
            model.name()
        )));
    }
    let word = |g: &GroupElement| -> Result<Vec<i32>> {
        model.check(g)?;
        match g {
            GroupElement::Free(w) => Ok(w.clone()),
            _ => unreachable!("checked against a free model"),
        }
    };
    let u = word(u)?;
    let v = word(v)?;
    let targets: Vec<Vec<i32>> = h.iter().map(word).collect::<Result<_>>()?;

    let c_uv = common_prefix(&u, &v);
    let on_uv = |w: &[i32]| w.len() > c_uv && (u.starts_with(w) || v.starts_with(w));

    let mut hull: HashSet<&[i32]> = HashSet::new();
    for t in &targets {
        let c = common_prefix(&u, t);
        for len in c + 1..=u.len() {
            hull.insert(&u[..len]);
        }
        for len in c + 1..=t.len() {
            hull.insert(&t[..len]);
        }
    }
    let doubled = hull.iter().filter(|w| !on_uv(w)).count() as u64;
    let geodesic = (u.len() + v.len() - 2 * c_uv) as u64;
    Ok(2 * doubled + geodesic)
}

fn common_prefix<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
