//! Hamiltonian paths of large rectangular grids by peeling two-wide strips
//! off the long side. Pieces of at most `EXACT` cells, or within 5×5, are
//! solved exactly.

use super::path::hamiltonian_path;
use crate::graphs::cube_graph;

/// 1-based (row, column).
pub(crate) type Cell = (usize, usize);

const EXACT: usize = 16;
const BUDGET: u64 = 500_000;

#[derive(Clone, Copy, Debug)]
struct Rect {
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
}

impl Rect {
    fn height(self) -> usize {
        self.r1 - self.r0 + 1
    }

    fn width(self) -> usize {
        self.c1 - self.c0 + 1
    }

    fn len(self) -> usize {
        self.height() * self.width()
    }

    fn contains(self, (r, c): Cell) -> bool {
        (self.r0..=self.r1).contains(&r) && (self.c0..=self.c1).contains(&c)
    }

    fn transpose(self) -> Rect {
        Rect {
            r0: self.c0,
            r1: self.c1,
            c0: self.r0,
            c1: self.r1,
        }
    }
}

fn flip((r, c): Cell) -> Cell {
    (c, r)
}

fn color((r, c): Cell) -> usize {
    (r + c) % 2
}

/// Color condition for a Hamiltonian s–t path in a bipartite grid.
fn compatible(rect: Rect, s: Cell, t: Cell) -> bool {
    let n = rect.len();
    if n == 1 {
        return s == t;
    }
    if s == t {
        return false;
    }
    if n % 2 == 0 {
        color(s) != color(t)
    } else {
        let major = color((rect.r0, rect.c0));
        color(s) == major && color(t) == major
    }
}

/// A Hamiltonian path of the grid `rows × cols` from `s` to `t`, or `None`
/// when the construction finds none. Correct paths only; not complete for
/// the narrow exceptional configurations of small grids.
pub(crate) fn rect_hamiltonian_path(
    rows: usize,
    cols: usize,
    s: Cell,
    t: Cell,
) -> Option<Vec<Cell>> {
    let rect = Rect {
        r0: 1,
        r1: rows,
        c0: 1,
        c1: cols,
    };
    let mut budget = BUDGET;
    solve(rect, s, t, &mut budget)
}

fn solve(rect: Rect, s: Cell, t: Cell, budget: &mut u64) -> Option<Vec<Cell>> {
    if *budget == 0 || !compatible(rect, s, t) {
        return None;
    }
    *budget -= 1;
    if rect.len() <= EXACT || (rect.height() <= 5 && rect.width() <= 5) {
        return exact(rect, s, t);
    }
    let transposed = |budget: &mut u64| {
        let p = peel(rect.transpose(), flip(s), flip(t), budget)?;
        Some(p.into_iter().map(flip).collect())
    };
    if rect.height() > rect.width() {
        transposed(budget).or_else(|| {
            (rect.width() >= 6)
                .then(|| peel(rect, s, t, budget))
                .flatten()
        })
    } else {
        peel(rect, s, t, budget)
            .or_else(|| (rect.height() >= 6).then(|| transposed(budget)).flatten())
    }
}

/// Peels two columns off either end; needs width at least 4.
fn peel(rect: Rect, s: Cell, t: Cell, budget: &mut u64) -> Option<Vec<Cell>> {
    for left in [true, false] {
        let (strip, rest, inner, edge) = if left {
            (
                Rect {
                    c1: rect.c0 + 1,
                    ..rect
                },
                Rect {
                    c0: rect.c0 + 2,
                    ..rect
                },
                rect.c0 + 1,
                rect.c0 + 2,
            )
        } else {
            (
                Rect {
                    c0: rect.c1 - 1,
                    ..rect
                },
                Rect {
                    c1: rect.c1 - 2,
                    ..rect
                },
                rect.c1 - 1,
                rect.c1 - 2,
            )
        };
        let found = match (strip.contains(s), strip.contains(t)) {
            (false, false) => splice(strip, rest, inner, edge, s, t, budget),
            (true, false) => cross(strip, rest, inner, edge, s, t, budget),
            (false, true) => cross(strip, rest, inner, edge, t, s, budget).map(|mut p| {
                p.reverse();
                p
            }),
            (true, true) => None,
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A path of `rest` from s to t that steps along its `edge` column, with
/// the two-wide `strip` inserted at that step.
fn splice(
    strip: Rect,
    rest: Rect,
    inner: usize,
    edge: usize,
    s: Cell,
    t: Cell,
    budget: &mut u64,
) -> Option<Vec<Cell>> {
    let p = solve(rest, s, t, budget)?;
    let outer = if inner > edge { inner + 1 } else { inner - 1 };
    let i = p
        .windows(2)
        .position(|w| w[0].1 == edge && w[1].1 == edge)?;
    let (a, b) = (p[i].0, p[i + 1].0);
    let mut detour = ladder_detour(strip.r0, strip.r1, a.min(b), inner, outer);
    if a > b {
        detour.reverse();
    }
    let mut out = p[..=i].to_vec();
    out.extend(detour);
    out.extend_from_slice(&p[i + 1..]);
    Some(out)
}

/// Covers a two-column ladder from (a, inner) to (a + 1, inner).
fn ladder_detour(r0: usize, r1: usize, a: usize, inner: usize, outer: usize) -> Vec<Cell> {
    let mut out: Vec<Cell> = (r0..=a).rev().map(|r| (r, inner)).collect();
    out.extend((r0..=r1).map(|r| (r, outer)));
    out.extend((a + 1..=r1).rev().map(|r| (r, inner)));
    out
}

/// s inside `strip`, t inside `rest`: cover the strip first, then cross.
fn cross(
    strip: Rect,
    rest: Rect,
    inner: usize,
    edge: usize,
    s: Cell,
    t: Cell,
    budget: &mut u64,
) -> Option<Vec<Cell>> {
    let mut rows: Vec<usize> = (strip.r0..=strip.r1).collect();
    rows.sort_by_key(|&r| r.abs_diff(t.0));
    for r in rows {
        let (u, v) = ((r, inner), (r, edge));
        if !compatible(strip, s, u) || !compatible(rest, v, t) {
            continue;
        }
        let Some(mut a) = solve(strip, s, u, budget) else {
            continue;
        };
        let Some(b) = solve(rest, v, t, budget) else {
            continue;
        };
        a.extend(b);
        return Some(a);
    }
    None
}

fn exact(rect: Rect, s: Cell, t: Cell) -> Option<Vec<Cell>> {
    let (h, w) = (rect.height(), rect.width());
    let g = cube_graph(&[h, w]).ok()?;
    let index = |(r, c): Cell| (r - rect.r0) * w + (c - rect.c0);
    let p = hamiltonian_path(&g, index(s), index(t)).ok()??;
    Some(
        p.into_iter()
            .map(|v| (rect.r0 + v / w, rect.c0 + v % w))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valid(rows: usize, cols: usize, p: &[Cell], s: Cell, t: Cell) -> bool {
        let distinct: std::collections::HashSet<_> = p.iter().collect();
        p.len() == rows * cols
            && distinct.len() == p.len()
            && p[0] == s
            && p[p.len() - 1] == t
            && p.windows(2)
                .all(|w| w[0].0.abs_diff(w[1].0) + w[0].1.abs_diff(w[1].1) == 1)
    }

    #[test]
    fn compatible_pairs_on_large_grids() {
        for (rows, cols) in [(4, 12), (7, 7), (5, 10), (9, 13), (20, 20)] {
            let cells: Vec<Cell> = (1..=rows)
                .flat_map(|r| (1..=cols).map(move |c| (r, c)))
                .collect();
            let rect = Rect {
                r0: 1,
                r1: rows,
                c0: 1,
                c1: cols,
            };
            for (i, &s) in cells.iter().enumerate().step_by(5) {
                for &t in cells.iter().skip(i % 3).step_by(7) {
                    if !compatible(rect, s, t) {
                        continue;
                    }
                    let p = rect_hamiltonian_path(rows, cols, s, t)
                        .unwrap_or_else(|| panic!("{rows}x{cols} {s:?}->{t:?}"));
                    assert!(valid(rows, cols, &p, s, t));
                }
            }
        }
    }

    #[test]
    fn incompatible_pairs_are_refused() {
        assert!(rect_hamiltonian_path(6, 6, (1, 1), (1, 3)).is_none());
        assert!(rect_hamiltonian_path(5, 7, (1, 2), (3, 3)).is_none());
    }
}
