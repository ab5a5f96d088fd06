//! Spanning walks of grid graphs Cube(m_1, ..., m_s). Lengths here count
//! vertices: a walk v_1 ... v_k has length k.

use super::path::{hamiltonian_path, parity_allows, SEARCH_LIMIT};
use super::rect::rect_hamiltonian_path;
use crate::error::{invalid, Error, Result};
use crate::graphs::{cube_coords, cube_graph, cube_index, FiniteGraph};
use crate::tsp::{shortest_path, solve_exact, TspInstance};

/// Grids up to this many vertices use the exact TSP when no Hamiltonian path
/// exists, so the walk is a shortest spanning walk.
const EXACT_FALLBACK: usize = 16;

/// A spanning walk of Cube(m1, m2) from `s` to `t` (1-based coordinates) with
/// at most m1·m2 + 2 vertices, Hamiltonian whenever possible. Vertices are
/// indices of [`cube_graph`].
pub fn grid_spanning_path(
    m1: usize,
    m2: usize,
    s: [usize; 2],
    t: [usize; 2],
) -> Result<Vec<usize>> {
    if m1 < 2 || m2 < 2 {
        return Err(invalid("grid sides must be at least 2"));
    }
    let dims = [m1, m2];
    let g = cube_graph(&dims)?;
    let si = cube_index(&dims, &s)?;
    let ti = cube_index(&dims, &t)?;
    if g.vertex_count() > SEARCH_LIMIT {
        return large_walk(&g, m1, m2, si, ti);
    }
    spanning_walk(&g, si, ti)
}

/// Same as [`spanning_walk`], with Hamiltonian paths built by strip
/// peeling instead of search.
fn large_walk(g: &FiniteGraph, m1: usize, m2: usize, s: usize, t: usize) -> Result<Vec<usize>> {
    let cell = |v: usize| (v / m2 + 1, v % m2 + 1);
    let index = |(r, c): (usize, usize)| (r - 1) * m2 + (c - 1);
    let ham = |u: usize, v: usize| {
        Ok(rect_hamiltonian_path(m1, m2, cell(u), cell(v))
            .map(|p| p.into_iter().map(index).collect()))
    };
    if let Some(p) = ham(s, t)? {
        return Ok(p);
    }
    near_hamiltonian(g, s, t, ham)?
        .ok_or_else(|| Error::Internal(format!("no spanning walk found between {s} and {t}")))
}

fn spanning_walk(g: &FiniteGraph, s: usize, t: usize) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if let Some(p) = hamiltonian_path(g, s, t)? {
        return Ok(p);
    }
    if n <= EXACT_FALLBACK {
        return exact(g, s, t);
    }
    if let Some(w) = near_hamiltonian(g, s, t, |u, v| hamiltonian_path(g, u, v))? {
        return Ok(w);
    }
    if n <= 22 {
        return exact(g, s, t);
    }
    Err(Error::Internal(format!(
        "no spanning walk found between {s} and {t}"
    )))
}

/// A Hamiltonian path from s (or a neighbor of s) to a vertex near t,
/// closed off by a shortest path to t; at most two extra vertices.
fn near_hamiltonian(
    g: &FiniteGraph,
    s: usize,
    t: usize,
    ham: impl Fn(usize, usize) -> Result<Option<Vec<usize>>>,
) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    let ds = g.bfs(s);
    let dt = g.bfs(t);
    let mut candidates: Vec<(u32, usize, usize)> = Vec::new();
    for (s2, &d1) in ds.iter().enumerate().filter(|&(_, &d)| d <= 1) {
        for (t2, &d2) in dt.iter().enumerate() {
            if s2 != t2 && d1 + d2 <= 2 && parity_allows(g, s2, t2) {
                candidates.push((d1 + d2, s2, t2));
            }
        }
    }
    candidates.sort_unstable();
    for (_, s2, t2) in candidates {
        if let Some(p) = ham(s2, t2)? {
            let mut walk = Vec::with_capacity(n + 2);
            if s2 != s {
                walk.push(s);
            }
            walk.extend(p);
            let tail = shortest_path(g, t2, t).expect("grids are connected");
            walk.extend(&tail[1..]);
            return Ok(Some(walk));
        }
    }
    Ok(None)
}

fn exact(g: &FiniteGraph, s: usize, t: usize) -> Result<Vec<usize>> {
    Ok(solve_exact(&TspInstance::new(g, s, t, 0..g.vertex_count()))?.walk)
}

/// A spanning walk of Cube(dims) from `s` to `t` with at most |V| + 2
/// vertices. Sides of length 1 are ignored; the remaining sides are folded
/// pairwise by a snake bijection until two remain, and the two-sided walk is
/// mapped back.
pub fn cube_spanning_path(dims: &[usize], s: &[usize], t: &[usize]) -> Result<Vec<usize>> {
    let g = cube_graph(dims)?;
    let s_idx = cube_index(dims, s)?;
    let t_idx = cube_index(dims, t)?;
    let keep: Vec<usize> = (0..dims.len()).filter(|&i| dims[i] > 1).collect();
    if keep.len() < 2 {
        return Err(invalid(
            "a cube with fewer than two nontrivial sides is a path graph, which has no spanning walks \
             of bounded excess (the (Z, {±1}) case)",
        ));
    }
    if g.vertex_count() <= 20 {
        if let Some(p) = hamiltonian_path(&g, s_idx, t_idx)? {
            return Ok(p);
        }
    }
    let reduced: Vec<usize> = keep.iter().map(|&i| dims[i]).collect();
    let project = |c: &[usize]| -> Vec<usize> { keep.iter().map(|&i| c[i]).collect() };
    let (ps, pt) = (project(s), project(t));

    // Fold the last two sides into one until two sides are left.
    let mut sides = reduced.clone();
    let mut fs = ps.clone();
    let mut ft = pt.clone();
    while sides.len() > 2 {
        let b = sides.pop().unwrap();
        let a = sides.pop().unwrap();
        let jb = fs.pop().unwrap();
        let ja = fs.pop().unwrap();
        fs.push(snake_inverse(a, ja, jb));
        let jb = ft.pop().unwrap();
        let ja = ft.pop().unwrap();
        ft.push(snake_inverse(a, ja, jb));
        sides.push(a * b);
    }
    let flat = grid_spanning_path(sides[0], sides[1], [fs[0], fs[1]], [ft[0], ft[1]])?;

    // Unfold each vertex back to coordinates of the original cube.
    let mut walk = Vec::with_capacity(flat.len());
    for v in flat {
        let c = cube_coords(&sides, v);
        let mut coords = vec![c[0]];
        let mut last = c[1];
        // The last fold joined side 2 with everything after it.
        for &a in &reduced[1..reduced.len() - 1] {
            let (ja, jb) = snake(a, last);
            coords.push(ja);
            last = jb;
        }
        coords.push(last);
        let mut full = vec![1; dims.len()];
        for (slot, &i) in keep.iter().enumerate() {
            full[i] = coords[slot];
        }
        walk.push(cube_index(dims, &full)?);
    }
    Ok(walk)
}

/// The snake h: 1..=a·b -> Cube(a, b): first along side `a` with the second
/// coordinate 1, then back along it with second coordinate 2, and so on.
pub fn snake(a: usize, k: usize) -> (usize, usize) {
    let r = (k - 1) / a;
    let c = (k - 1) % a;
    let i = if r % 2 == 0 { c + 1 } else { a - c };
    (i, r + 1)
}

pub fn snake_inverse(a: usize, i: usize, j: usize) -> usize {
    let r = j - 1;
    let c = if r % 2 == 0 { i - 1 } else { a - i };
    r * a + c + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::check_walk;

    fn check(dims: &[usize], walk: &[usize], s: usize, t: usize) {
        let g = cube_graph(dims).unwrap();
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        check_walk(&g, walk, s, t, &all).unwrap();
        assert!(walk.len() <= g.vertex_count() + 2);
    }

    #[test]
    fn snake_is_a_lipschitz_bijection() {
        for (a, b) in [(2, 3), (3, 3), (4, 2)] {
            let mut seen = std::collections::HashSet::new();
            for k in 1..=a * b {
                let (i, j) = snake(a, k);
                assert!(seen.insert((i, j)));
                assert_eq!(snake_inverse(a, i, j), k);
                if k > 1 {
                    let (pi, pj) = snake(a, k - 1);
                    assert_eq!(pi.abs_diff(i) + pj.abs_diff(j), 1);
                }
            }
        }
    }

    #[test]
    fn two_by_two_examples() {
        let w = grid_spanning_path(2, 2, [1, 1], [2, 2]).unwrap();
        assert_eq!(w.len(), 5);
        let w = grid_spanning_path(2, 2, [1, 1], [1, 2]).unwrap();
        assert_eq!(w.len(), 4);
        let w = grid_spanning_path(3, 3, [2, 2], [1, 1]).unwrap();
        assert!(w.len() <= 11);
        check(&[3, 3], &w, 4, 0);
    }

    #[test]
    fn three_cube_corner_to_corner() {
        let dims = [2, 2, 2];
        let w = cube_spanning_path(&dims, &[1, 1, 1], &[2, 2, 2]).unwrap();
        assert_eq!(w.len(), 8);
        check(&dims, &w, 0, 7);
    }

    #[test]
    fn folded_cubes_stay_within_bound() {
        for dims in [
            vec![3, 2, 2],
            vec![2, 3, 3],
            vec![3, 1, 3],
            vec![2, 2, 2, 2],
            vec![3, 3, 3],
        ] {
            let g = cube_graph(&dims).unwrap();
            let n = g.vertex_count();
            for s in (0..n).step_by(3) {
                for t in (0..n).step_by(2) {
                    let w =
                        cube_spanning_path(&dims, &cube_coords(&dims, s), &cube_coords(&dims, t))
                            .unwrap();
                    check(&dims, &w, s, t);
                }
            }
        }
    }

    #[test]
    fn grids_beyond_the_search_limit() {
        for (m1, m2) in [(7, 7), (6, 8), (3, 15)] {
            let g = cube_graph(&[m1, m2]).unwrap();
            let n = g.vertex_count();
            for s in 0..n {
                for t in (s % 5..n).step_by(5) {
                    let c = |v: usize| {
                        let c = cube_coords(&[m1, m2], v);
                        [c[0], c[1]]
                    };
                    let w = grid_spanning_path(m1, m2, c(s), c(t)).unwrap();
                    check(&[m1, m2], &w, s, t);
                }
            }
        }
    }

    #[test]
    fn path_graphs_are_rejected() {
        assert!(cube_spanning_path(&[5], &[1], &[5]).is_err());
        assert!(cube_spanning_path(&[1, 4, 1], &[1, 1, 1], &[1, 3, 1]).is_err());
    }
}
