use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::graphs::FiniteGraph;

/// A Hamiltonian u–v path in the cube of `g`, built on a BFS spanning tree.
/// Consecutive vertices are at distance at most 3 in `g`.
///
/// For a tree T and the edge u–y on the u–v path, T splits into T_u ∋ u and
/// T_y ∋ y, v. The path runs u ⇝ a inside T_u with a a neighbor of u, then
/// jumps to T_y: to y ⇝ v when v ≠ y, or to b ⇝ y with b a neighbor of y.
pub fn cube3_hamiltonian_path(g: &FiniteGraph, u: usize, v: usize) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(invalid(format!(
            "endpoints ({u},{v}) out of range for {n} vertices"
        )));
    }
    if u == v {
        return Err(invalid("endpoints must be distinct"));
    }
    if !g.is_connected() {
        return Err(invalid("graph must be connected"));
    }
    let tree = spanning_tree(g, u);
    let mut inside = vec![false; n];
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    build(&tree, &all, u, v, &mut inside, &mut out);
    Ok(out)
}

fn spanning_tree(g: &FiniteGraph, root: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut tree = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                tree[x].push(y);
                tree[y].push(x);
                queue.push_back(y);
            }
        }
    }
    tree
}

/// Marked vertices reachable from `from` in the tree without crossing
/// the edge from–`cut`.
fn side(tree: &[Vec<usize>], inside: &[bool], from: usize, cut: usize) -> Vec<usize> {
    let mut part = vec![from];
    let mut stack = vec![(from, cut)];
    while let Some((x, parent)) = stack.pop() {
        for &y in &tree[x] {
            if y != parent && inside[y] {
                part.push(y);
                stack.push((y, x));
            }
        }
    }
    part
}

/// The tree neighbor of `u` towards `v` inside the marked component.
fn step_towards(tree: &[Vec<usize>], inside: &[bool], u: usize, v: usize) -> usize {
    let mut parent = vec![usize::MAX; inside.len()];
    parent[v] = v;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &y in &tree[x] {
            if inside[y] && parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    parent[u]
}

fn build(
    tree: &[Vec<usize>],
    comp: &[usize],
    u: usize,
    v: usize,
    inside: &mut [bool],
    out: &mut Vec<usize>,
) {
    for &x in comp {
        inside[x] = true;
    }
    let y = step_towards(tree, inside, u, v);
    let left = side(tree, inside, u, y);
    let right = side(tree, inside, y, u);
    let smallest_neighbor =
        |c: usize, part: &[usize]| *tree[c].iter().filter(|w| part.contains(w)).min().unwrap();
    let a = (left.len() > 1).then(|| smallest_neighbor(u, &left));
    let b = (v == y && right.len() > 1).then(|| smallest_neighbor(y, &right));
    for &x in comp {
        inside[x] = false;
    }

    match a {
        None => out.push(u),
        Some(a) => build(tree, &left, u, a, inside, out),
    }
    if v != y {
        build(tree, &right, y, v, inside, out);
    } else {
        match b {
            None => out.push(y),
            Some(b) => build(tree, &right, b, y, inside, out),
        }
    }
}
