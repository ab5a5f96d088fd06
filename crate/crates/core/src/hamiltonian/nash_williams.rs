use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::groups::{AbelianGroup, AbelianVec, Lattice};

/// Generators a_1..a_r, b_1..b_s of an infinite abelian group such that every
/// element is uniquely Σ p_i a_i + Σ q_j b_j with p_i ∈ Z and 0 ≤ q_j < m_j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NashWilliamsBasis {
    pub free: Vec<Vec<i64>>,
    pub finite: Vec<Vec<i64>>,
    pub moduli: Vec<u64>,
    /// Half-side of the box on which uniqueness was checked.
    pub checked_radius: i64,
}

/// Boxes larger than this are shrunk before the uniqueness check.
const CHECK_CAP: usize = 200_000;
/// Generator orders tried when looking for a basis with at least two parts.
const MAX_ORDERINGS: usize = 5040;

impl NashWilliamsBasis {
    /// The sides of the box [-l, l]^r × [1, m_1] × ... × [1, m_s].
    pub fn box_dims(&self, l: usize) -> Vec<usize> {
        let mut dims = vec![2 * l + 1; self.free.len()];
        dims.extend(self.moduli.iter().map(|&m| m as usize));
        dims
    }

    /// Σ p_i a_i + Σ q_j b_j.
    pub fn combine(&self, group: &AbelianGroup, p: &[i64], q: &[u64]) -> AbelianVec {
        let mut v = vec![0i64; group.dim()];
        for (c, a) in p.iter().zip(&self.free) {
            for (x, y) in v.iter_mut().zip(a) {
                *x += c * y;
            }
        }
        for (&c, b) in q.iter().zip(&self.finite) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += c as i64 * y;
            }
        }
        group.element(&v).expect("dimension matches")
    }

    /// The element at 1-based box coordinates, free coordinates offset by l.
    pub fn at_box(&self, group: &AbelianGroup, l: usize, coords: &[usize]) -> AbelianVec {
        let r = self.free.len();
        let p: Vec<i64> = coords[..r]
            .iter()
            .map(|&c| c as i64 - 1 - l as i64)
            .collect();
        let q: Vec<u64> = coords[r..].iter().map(|&c| c as u64 - 1).collect();
        self.combine(group, &p, &q)
    }
}

/// Splits the generators (taken up to sign) into free and finite parts by the
/// chain of indices [⟨g_1..g_i⟩ : ⟨g_1..g_{i-1}⟩]. Orderings of the
/// generators are tried, given order first, until both parts together have
/// at least two members; the result is checked for uniqueness on a box.
pub fn nash_williams_basis(group: &AbelianGroup) -> Result<NashWilliamsBasis> {
    if group.rank() == 0 {
        return Err(invalid("Nash-Williams basis needs an infinite group"));
    }
    let mut gens: Vec<AbelianVec> = Vec::new();
    for g in group.gens() {
        if !gens.contains(&group.neg(g)) {
            gens.push(g.clone());
        }
    }
    let mut order: Vec<usize> = (0..gens.len()).collect();
    let mut first = None;
    for _ in 0..MAX_ORDERINGS {
        let basis = chain(group, &gens, &order);
        if basis.free.len() + basis.finite.len() >= 2 {
            return verify(group, basis);
        }
        first.get_or_insert(basis);
        if !next_permutation(&mut order) {
            break;
        }
    }
    verify(group, first.expect("at least one ordering"))
}

fn chain(group: &AbelianGroup, gens: &[AbelianVec], order: &[usize]) -> NashWilliamsBasis {
    let dim = group.dim();
    let rank = group.rank();
    let mut rows: Vec<Vec<BigInt>> = group
        .moduli()
        .iter()
        .enumerate()
        .map(|(j, &m)| {
            let mut r = vec![BigInt::zero(); dim];
            r[rank + j] = BigInt::from(m);
            r
        })
        .collect();
    let mut basis = NashWilliamsBasis {
        free: Vec::new(),
        finite: Vec::new(),
        moduli: Vec::new(),
        checked_radius: 0,
    };
    for &i in order {
        let v = gens[i].to_integers();
        let lattice = Lattice::span(dim, &rows);
        let coords: Vec<i64> = v
            .iter()
            .map(|x| x.to_i64().expect("generator coordinates fit in i64"))
            .collect();
        match lattice.order_of(&v) {
            None => basis.free.push(coords),
            Some(m) if m.is_one() => {}
            Some(m) => {
                basis.finite.push(coords);
                basis.moduli.push(m.to_u64().expect("index fits in u64"));
            }
        }
        rows.push(v);
    }
    basis
}

fn verify(group: &AbelianGroup, mut basis: NashWilliamsBasis) -> Result<NashWilliamsBasis> {
    let finite: usize = basis.moduli.iter().map(|&m| m as usize).product();
    let r = basis.free.len() as u32;
    let mut l = basis.moduli.iter().sum::<u64>() as usize + 10;
    while l > 1 && (2 * l + 1).pow(r) * finite > CHECK_CAP {
        l -= 1;
    }
    let dims = basis.box_dims(l);
    let total: usize = dims.iter().product();
    let mut seen = HashSet::with_capacity(total);
    for idx in 0..total {
        let coords = crate::graphs::cube_coords(&dims, idx);
        if !seen.insert(basis.at_box(group, l, &coords)) {
            return Err(Error::Internal(format!(
                "basis representation is not unique at box coordinates {coords:?}"
            )));
        }
    }
    basis.checked_radius = l as i64;
    Ok(basis)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_lattice() {
        let b = nash_williams_basis(&AbelianGroup::standard(2).unwrap()).unwrap();
        assert_eq!(b.free, vec![vec![1, 0], vec![0, 1]]);
        assert!(b.finite.is_empty());
    }

    #[test]
    fn two_and_three() {
        let g = AbelianGroup::new(1, &[], &[vec![2], vec![3]]).unwrap();
        let b = nash_williams_basis(&g).unwrap();
        assert_eq!(
            (b.free, b.finite, b.moduli),
            (vec![vec![2]], vec![vec![3]], vec![2])
        );
        // 2p + 3q with q ∈ {0, 1} hits each integer at most once.
        let mut seen = HashSet::new();
        for p in -10..=10 {
            for q in 0..2 {
                assert!(seen.insert(2 * p + 3 * q));
            }
        }
    }

    #[test]
    fn one_and_two_needs_reordering() {
        let g = AbelianGroup::new(1, &[], &[vec![1], vec![2]]).unwrap();
        let b = nash_williams_basis(&g).unwrap();
        assert_eq!(
            (b.free, b.finite, b.moduli),
            (vec![vec![2]], vec![vec![1]], vec![2])
        );
    }

    #[test]
    fn mixed_group() {
        let g = AbelianGroup::new(1, &[2], &[vec![1, 0], vec![0, 1]]).unwrap();
        let b = nash_williams_basis(&g).unwrap();
        assert_eq!(
            (b.free, b.finite, b.moduli),
            (vec![vec![1, 0]], vec![vec![0, 1]], vec![2])
        );
        let z = AbelianGroup::standard(1).unwrap();
        let b = nash_williams_basis(&z).unwrap();
        assert_eq!((b.free.len(), b.finite.len()), (1, 0));
    }
}
