use std::collections::VecDeque;

use crate::error::{invalid, Result};

/// Multiplication tables up to this order are checked for associativity on
/// every triple; larger tables are checked on a deterministic sample.
const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 64;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    name: String,
}

impl FiniteGroupTable {
    /// Builds a table from rows `mul[x][y] = x*y`, validating the group axioms.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(invalid("a group table needs at least one element"));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(invalid(format!(
                    "row {x} has {} entries, expected {order}",
                    row.len()
                )));
            }
            mul.extend_from_slice(row);
        }
        latin_square(order, &mul)?;

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] == x && mul[x * order + e] == x))
            .ok_or_else(|| invalid("table has no two-sided identity"))?;
        let mut inv = vec![0; order];
        for x in 0..order {
            inv[x] = (0..order)
                .find(|&y| mul[x * order + y] == identity)
                .ok_or_else(|| invalid(format!("element {x} has no inverse")))?;
            if mul[inv[x] * order + x] != identity {
                return Err(invalid(format!("inverse of {x} is not two-sided")));
            }
        }
        let table = FiniteGroupTable {
            order,
            mul,
            identity,
            inv,
            name: name.into(),
        };
        table.check_associative()?;
        Ok(table)
    }

    /// The cyclic group Z/nZ, element i standing for the residue i.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("cyclic group order must be positive"));
        }
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let inv = (0..n).map(|x| (n - x) % n).collect();
        Ok(FiniteGroupTable {
            order: n,
            mul,
            identity: 0,
            inv,
            name: format!("Z/{n}"),
        })
    }

    /// Z/m_1 x ... x Z/m_s with elements indexed in mixed radix, last
    /// coordinate fastest.
    pub fn abelian(moduli: &[usize]) -> Result<Self> {
        if moduli.iter().any(|&m| m == 0) {
            return Err(invalid("moduli must be positive"));
        }
        let order: usize = moduli.iter().product();
        let encode = |c: &[usize]| c.iter().zip(moduli).fold(0, |acc, (&x, &m)| acc * m + x);
        let coords: Vec<Vec<usize>> = (0..order).map(|i| mixed_radix(i, moduli)).collect();
        let mut mul = Vec::with_capacity(order * order);
        for a in &coords {
            for b in &coords {
                let sum: Vec<usize> = a
                    .iter()
                    .zip(b)
                    .zip(moduli)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                mul.push(encode(&sum));
            }
        }
        let inv = coords
            .iter()
            .map(|c| {
                let neg: Vec<usize> = c.iter().zip(moduli).map(|(x, m)| (m - x) % m).collect();
                encode(&neg)
            })
            .collect();
        let name = if moduli.is_empty() {
            "1".to_string()
        } else {
            moduli
                .iter()
                .map(|m| format!("Z/{m}"))
                .collect::<Vec<_>>()
                .join("x")
        };
        Ok(FiniteGroupTable {
            order,
            mul,
            identity: 0,
            inv,
            name,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Elements reachable from the identity by right multiplication with `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn generated_by(&self, gens: &[usize]) -> bool {
        self.closure(gens).into_iter().all(|b| b)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let check = |x: usize, y: usize, z: usize| -> Result<()> {
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                return Err(invalid(format!("associativity fails on ({x},{y},{z})")));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        check(x, y, z)?;
                    }
                }
            }
        } else {
            // Deterministic LCG sample, 64 triples per element.
            let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
            for _ in 0..64 * n {
                let mut next = || {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) as usize) % n
                };
                let (x, y, z) = (next(), next(), next());
                check(x, y, z)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn mixed_radix(mut i: usize, moduli: &[usize]) -> Vec<usize> {
    let mut out = vec![0; moduli.len()];
    for (slot, &m) in out.iter_mut().zip(moduli).rev() {
        *slot = i % m;
        i /= m;
    }
    out
}

fn latin_square(order: usize, mul: &[usize]) -> Result<()> {
    for x in 0..order {
        let mut row = vec![false; order];
        let mut col = vec![false; order];
        for y in 0..order {
            let r = mul[x * order + y];
            let c = mul[y * order + x];
            if r >= order || c >= order {
                return Err(invalid(format!(
                    "table entry out of range in row/column {x}"
                )));
            }
            if std::mem::replace(&mut row[r], true) || std::mem::replace(&mut col[c], true) {
                return Err(invalid(format!("row or column {x} is not a permutation")));
            }
        }
    }
    Ok(())
}
