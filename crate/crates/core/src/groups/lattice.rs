//! Integer lattices in row form: Hermite reduction, membership and the order
//! of a vector modulo a lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A lattice basis in row echelon (Hermite) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    /// Rows with strictly increasing pivot columns, positive pivots, and
    /// entries above each pivot reduced into `[0, pivot)`.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The lattice spanned by `generators`, each of length `dim`.
    pub fn span(dim: usize, generators: &[Vec<BigInt>]) -> Lattice {
        let mut m: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            loop {
                // Smallest nonzero entry in this column becomes the pivot candidate.
                let best = m
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r[col].is_zero())
                    .min_by(|(_, a), (_, b)| a[col].abs().cmp(&b[col].abs()))
                    .map(|(i, _)| i);
                let Some(p) = best else { break };
                let pivot_row = m.swap_remove(p);
                let mut done = true;
                for r in m.iter_mut() {
                    if r[col].is_zero() {
                        continue;
                    }
                    let q = r[col].div_floor(&pivot_row[col]);
                    for (x, y) in r.iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                    if !r[col].is_zero() {
                        done = false;
                    }
                }
                m.retain(|r| r.iter().any(|x| !x.is_zero()));
                if done {
                    let mut pivot_row = pivot_row;
                    if pivot_row[col].is_negative() {
                        for x in pivot_row.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    rows.push(pivot_row);
                    pivots.push(col);
                    break;
                }
                m.push(pivot_row);
            }
        }
        // Reduce entries above each pivot.
        for i in 0..rows.len() {
            let col = pivots[i];
            for j in 0..i {
                let q = rows[j][col].div_floor(&rows[i][col]);
                if q.is_zero() {
                    continue;
                }
                let (upper, lower) = rows.split_at_mut(i);
                for (x, y) in upper[j].iter_mut().zip(&lower[0]) {
                    *x -= &q * y;
                }
            }
        }
        Lattice { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// True when the lattice is all of Z^dim.
    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
            && self
                .rows
                .iter()
                .zip(&self.pivots)
                .all(|(r, &c)| r[c].is_one())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut rest = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let (q, r) = rest[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        rest.iter().all(|x| x.is_zero())
    }

    /// Smallest m ≥ 1 with m·v in the lattice, or `None` when v lies outside
    /// its rational span.
    pub fn order_of(&self, v: &[BigInt]) -> Option<BigInt> {
        let mut rest: Vec<BigRational> = v
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut denominator = BigInt::one();
        for col in 0..self.dim {
            if rest[col].is_zero() {
                continue;
            }
            let i = self.pivots.iter().position(|&c| c == col)?;
            let row = &self.rows[i];
            let coef = &rest[col] / BigRational::from_integer(row[col].clone());
            denominator = denominator.lcm(coef.denom());
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &coef * BigRational::from_integer(y.clone());
            }
        }
        Some(denominator)
    }

    /// First unit vector not in the lattice, as a witness of non-fullness.
    pub fn missing_unit(&self) -> Option<usize> {
        (0..self.dim).find(|&i| {
            let mut e = vec![BigInt::zero(); self.dim];
            e[i] = BigInt::one();
            !self.contains(&e)
        })
    }
}
