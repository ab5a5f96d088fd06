use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::lattice::Lattice;
use super::table::{mixed_radix, FiniteGroupTable};
use crate::error::{invalid, resource, Error, Result};
use crate::limits::Limits;

/// Which factor of a free product a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    H,
    K,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::H => Side::K,
            Side::K => Side::H,
        }
    }
}

/// A non-identity factor element inside a free-product word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub side: Side,
    pub elem: u32,
}

/// Element of Z^r x Z/m_1 x ... x Z/m_s: free coordinates then residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianVec {
    pub free: Vec<BigInt>,
    pub torsion: Vec<u64>,
}

impl AbelianVec {
    /// All coordinates as integers, residues taken in `[0, m)`.
    pub fn to_integers(&self) -> Vec<BigInt> {
        self.free
            .iter()
            .cloned()
            .chain(self.torsion.iter().map(|&q| BigInt::from(q)))
            .collect()
    }
}

/// A group element in normal form. The payload only makes sense together
/// with the model that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Finite(usize),
    Abelian(AbelianVec),
    /// Reduced word; letter `k` is generator k (1-based), `-k` its inverse.
    Free(Vec<i32>),
    /// Alternating word of non-identity letters.
    FreeProduct(Vec<Letter>),
}

/// A finite group together with a symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Arc<FiniteGroupTable>,
    gens: Vec<usize>,
    dist: Vec<u32>,
}

impl FiniteGroup {
    /// Symmetrizes `gens` (each generator followed by its inverse when new)
    /// and checks that they generate.
    pub fn new(table: FiniteGroupTable, gens: &[usize]) -> Result<Self> {
        let mut sym = Vec::new();
        for &s in gens {
            if s >= table.order() {
                return Err(invalid(format!(
                    "generator {s} is not an element of {}",
                    table.name()
                )));
            }
            if s == table.identity() {
                return Err(invalid("the identity cannot be a generator"));
            }
            for t in [s, table.inv(s)] {
                if !sym.contains(&t) {
                    sym.push(t);
                }
            }
        }
        let dist = bfs_table(&table, &sym);
        if let Some(x) = dist.iter().position(|&d| d == u32::MAX) {
            return Err(invalid(format!(
                "generators {gens:?} do not generate {}: element {x} is unreachable",
                table.name()
            )));
        }
        Ok(FiniteGroup {
            table: Arc::new(table),
            gens: sym,
            dist,
        })
    }

    /// Z/n with the given residues (reduced mod n) as generators.
    pub fn cyclic(n: usize, gens: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(invalid("cyclic group order must be at least 1"));
        }
        let mut residues = Vec::new();
        let mut g = n as i64;
        for &s in gens {
            let r = s.rem_euclid(n as i64);
            if r == 0 {
                return Err(invalid(format!("generator {s} is zero mod {n}")));
            }
            g = g.gcd(&r);
            residues.push(r as usize);
        }
        if g != 1 {
            return Err(invalid(format!(
                "generators {gens:?} do not generate Z/{n} (gcd {g})"
            )));
        }
        FiniteGroup::new(FiniteGroupTable::cyclic(n)?, &residues)
    }

    /// Z/n with generator 1, whose Cayley graph is the n-cycle.
    pub fn cycle(n: usize) -> Result<Self> {
        if n == 1 {
            FiniteGroup::cyclic(1, &[])
        } else {
            FiniteGroup::cyclic(n, &[1])
        }
    }

    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> usize {
        self.table.identity()
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    /// Word length of `x`.
    #[inline]
    pub fn norm(&self, x: usize) -> u32 {
        self.dist[x]
    }

    pub fn distance(&self, x: usize, y: usize) -> u32 {
        self.dist[self.table.mul(self.table.inv(x), y)]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Elements adjacent to `x` in the Cayley graph, in generator order.
    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.gens.iter().map(move |&s| self.table.mul(x, s))
    }
}

fn bfs_table(table: &FiniteGroupTable, gens: &[usize]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; table.order()];
    dist[table.identity()] = 0;
    let mut queue = VecDeque::from([table.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = table.mul(x, s);
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Z^rank x Z/m_1 x ... x Z/m_s with a symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    rank: usize,
    moduli: Vec<u64>,
    gens: Vec<AbelianVec>,
    standard: bool,
}

impl AbelianGroup {
    /// `gens` are integer vectors of length `rank + moduli.len()`; torsion
    /// coordinates are reduced. Generation is checked by Hermite reduction of
    /// the generators together with the relations m_j e_{rank+j}.
    pub fn new(rank: usize, moduli: &[u64], gens: &[Vec<i64>]) -> Result<Self> {
        if rank + moduli.len() == 0 {
            return Err(invalid("abelian group needs rank + number of moduli >= 1"));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(invalid(format!("modulus {m} must be at least 2")));
        }
        let dim = rank + moduli.len();
        let mut reduced = Vec::new();
        for g in gens {
            if g.len() != dim {
                return Err(invalid(format!(
                    "generator {g:?} has {} coordinates, expected {dim}",
                    g.len()
                )));
            }
            let v = reduce_abelian(rank, moduli, g);
            if v.free.iter().all(|x| x.is_zero()) && v.torsion.iter().all(|&q| q == 0) {
                return Err(invalid(format!("generator {g:?} is the identity")));
            }
            reduced.push(v);
        }

        let mut rows: Vec<Vec<BigInt>> = reduced.iter().map(AbelianVec::to_integers).collect();
        for (j, &m) in moduli.iter().enumerate() {
            let mut r = vec![BigInt::zero(); dim];
            r[rank + j] = BigInt::from(m);
            rows.push(r);
        }
        let lattice = Lattice::span(dim, &rows);
        if let Some(i) = lattice.missing_unit() {
            return Err(invalid(format!(
                "generators do not generate: the coset of unit vector e{} is never reached",
                i + 1
            )));
        }

        let mut sym: Vec<AbelianVec> = Vec::new();
        for v in reduced {
            let neg = negate(&v, moduli);
            for t in [v, neg] {
                if !sym.contains(&t) {
                    sym.push(t);
                }
            }
        }
        let units: HashSet<AbelianVec> = (0..dim)
            .flat_map(|i| {
                let mut e = vec![0i64; dim];
                e[i] = 1;
                let u = reduce_abelian(rank, moduli, &e);
                let n = negate(&u, moduli);
                [u, n]
            })
            .collect();
        let standard = sym.iter().cloned().collect::<HashSet<_>>() == units;
        Ok(AbelianGroup {
            rank,
            moduli: moduli.to_vec(),
            gens: sym,
            standard,
        })
    }

    /// Z^rank with the standard basis.
    pub fn standard(rank: usize) -> Result<Self> {
        let gens: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        AbelianGroup::new(rank, &[], &gens)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn gens(&self) -> &[AbelianVec] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.rank + self.moduli.len()
    }

    /// True when the generators are exactly the signed unit vectors.
    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn element(&self, coords: &[i64]) -> Result<AbelianVec> {
        if coords.len() != self.dim() {
            return Err(invalid(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        Ok(reduce_abelian(self.rank, &self.moduli, coords))
    }

    pub fn add(&self, a: &AbelianVec, b: &AbelianVec) -> AbelianVec {
        AbelianVec {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.moduli)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn neg(&self, a: &AbelianVec) -> AbelianVec {
        negate(a, &self.moduli)
    }

    pub fn zero(&self) -> AbelianVec {
        AbelianVec {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![0; self.moduli.len()],
        }
    }

    /// l1 norm on free coordinates plus cyclic distance on residues; the
    /// word length for standard generators.
    pub fn standard_norm(&self, a: &AbelianVec) -> u64 {
        let free: u64 = a
            .free
            .iter()
            .map(|x| x.abs().to_u64().unwrap_or(u64::MAX))
            .sum();
        let torsion: u64 = a
            .torsion
            .iter()
            .zip(&self.moduli)
            .map(|(&q, &m)| q.min(m - q))
            .sum();
        free + torsion
    }

    /// The finite group Z/m_1 x ... x Z/m_s with the same generators, for
    /// rank 0. Element indices follow mixed radix, last coordinate fastest.
    pub fn to_finite(&self) -> Result<FiniteGroup> {
        if self.rank != 0 {
            return Err(invalid("only a rank-0 abelian group is finite"));
        }
        let moduli: Vec<usize> = self.moduli.iter().map(|&m| m as usize).collect();
        let table = FiniteGroupTable::abelian(&moduli)?;
        let gens: Vec<usize> = self
            .gens
            .iter()
            .map(|g| {
                g.torsion
                    .iter()
                    .zip(&moduli)
                    .fold(0, |acc, (&x, &m)| acc * m + x as usize)
            })
            .collect();
        FiniteGroup::new(table, &gens)
    }
}

/// Residues of a finite abelian element index, inverse of the mixed radix
/// encoding used by [`AbelianGroup::to_finite`].
pub fn abelian_index_coords(index: usize, moduli: &[usize]) -> Vec<usize> {
    mixed_radix(index, moduli)
}

fn reduce_abelian(rank: usize, moduli: &[u64], coords: &[i64]) -> AbelianVec {
    AbelianVec {
        free: coords[..rank].iter().map(|&x| BigInt::from(x)).collect(),
        torsion: coords[rank..]
            .iter()
            .zip(moduli)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
            .collect(),
    }
}

fn negate(a: &AbelianVec, moduli: &[u64]) -> AbelianVec {
    AbelianVec {
        free: a.free.iter().map(|x| -x).collect(),
        torsion: a
            .torsion
            .iter()
            .zip(moduli)
            .map(|(&q, &m)| (m - q) % m)
            .collect(),
    }
}

/// The computable group models, each with a symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupModel {
    Finite(FiniteGroup),
    Abelian(AbelianGroup),
    /// Free group on `rank` letters with the free generating set.
    Free {
        rank: usize,
    },
    FreeProduct {
        h: FiniteGroup,
        k: FiniteGroup,
    },
}

impl GroupModel {
    pub fn cyclic(n: usize, gens: &[i64]) -> Result<Self> {
        Ok(GroupModel::Finite(FiniteGroup::cyclic(n, gens)?))
    }

    pub fn abelian(rank: usize, moduli: &[u64], gens: &[Vec<i64>]) -> Result<Self> {
        Ok(GroupModel::Abelian(AbelianGroup::new(rank, moduli, gens)?))
    }

    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(invalid(format!(
                "free group rank must be in 1..=26, got {rank}"
            )));
        }
        Ok(GroupModel::Free { rank })
    }

    pub fn free_product(h: FiniteGroup, k: FiniteGroup) -> Result<Self> {
        if h.order() < 2 || k.order() < 2 {
            return Err(invalid(
                "free product factors must be nontrivial; a trivial factor leaves a finite base",
            ));
        }
        Ok(GroupModel::FreeProduct { h, k })
    }

    pub fn name(&self) -> String {
        match self {
            GroupModel::Finite(g) => g.table().name().to_string(),
            GroupModel::Abelian(a) => {
                let mut parts: Vec<String> = Vec::new();
                match a.rank {
                    0 => {}
                    1 => parts.push("Z".into()),
                    r => parts.push(format!("Z^{r}")),
                }
                parts.extend(a.moduli.iter().map(|m| format!("Z/{m}")));
                parts.join("x")
            }
            GroupModel::Free { rank } => format!("F{rank}"),
            GroupModel::FreeProduct { h, k } => {
                format!("{}*{}", h.table().name(), k.table().name())
            }
        }
    }

    /// Finite order, or `None` for infinite models.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupModel::Finite(g) => Some(g.order()),
            GroupModel::Abelian(a) if a.rank == 0 => {
                Some(a.moduli.iter().map(|&m| m as usize).product())
            }
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupModel::Finite(g) => GroupElement::Finite(g.identity()),
            GroupModel::Abelian(a) => GroupElement::Abelian(a.zero()),
            GroupModel::Free { .. } => GroupElement::Free(Vec::new()),
            GroupModel::FreeProduct { .. } => GroupElement::FreeProduct(Vec::new()),
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    /// The symmetric generating set in its fixed order.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupModel::Finite(g) => g.gens().iter().map(|&s| GroupElement::Finite(s)).collect(),
            GroupModel::Abelian(a) => a
                .gens()
                .iter()
                .cloned()
                .map(GroupElement::Abelian)
                .collect(),
            GroupModel::Free { rank } => (1..=*rank as i32)
                .flat_map(|k| [GroupElement::Free(vec![k]), GroupElement::Free(vec![-k])])
                .collect(),
            GroupModel::FreeProduct { h, k } => {
                let letter = |side, s: usize| {
                    GroupElement::FreeProduct(vec![Letter {
                        side,
                        elem: s as u32,
                    }])
                };
                h.gens()
                    .iter()
                    .map(|&s| letter(Side::H, s))
                    .chain(k.gens().iter().map(|&s| letter(Side::K, s)))
                    .collect()
            }
        }
    }

    /// Checks that `g` is a normal-form element of this model.
    pub fn check(&self, g: &GroupElement) -> Result<()> {
        let ok = match (self, g) {
            (GroupModel::Finite(f), GroupElement::Finite(x)) => *x < f.order(),
            (GroupModel::Abelian(a), GroupElement::Abelian(v)) => {
                v.free.len() == a.rank
                    && v.torsion.len() == a.moduli.len()
                    && v.torsion.iter().zip(&a.moduli).all(|(q, m)| q < m)
            }
            (GroupModel::Free { rank }, GroupElement::Free(w)) => {
                w.iter()
                    .all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupModel::FreeProduct { h, k }, GroupElement::FreeProduct(w)) => {
                w.iter().all(|l| {
                    let f = if l.side == Side::H { h } else { k };
                    (l.elem as usize) < f.order() && l.elem as usize != f.identity()
                }) && w.windows(2).all(|p| p[0].side != p[1].side)
            }
            _ => {
                return Err(Error::ModelMismatch(format!(
                    "{g:?} is not an element of {}",
                    self.name()
                )))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!(
                "{g:?} is not in normal form for {}",
                self.name()
            )))
        }
    }

    /// Brings a raw payload of the right variant into normal form.
    pub fn normalize(&self, g: &GroupElement) -> Result<GroupElement> {
        match (self, g) {
            (GroupModel::Abelian(a), GroupElement::Abelian(v)) => {
                if v.free.len() != a.rank || v.torsion.len() != a.moduli.len() {
                    return Err(Error::ModelMismatch(format!(
                        "{v:?} has the wrong shape for {}",
                        self.name()
                    )));
                }
                Ok(GroupElement::Abelian(AbelianVec {
                    free: v.free.clone(),
                    torsion: v
                        .torsion
                        .iter()
                        .zip(&a.moduli)
                        .map(|(q, m)| q % m)
                        .collect(),
                }))
            }
            (GroupModel::Free { rank }, GroupElement::Free(w)) => {
                if w.iter()
                    .any(|&l| l == 0 || l.unsigned_abs() as usize > *rank)
                {
                    return Err(invalid(format!(
                        "word {w:?} uses letters outside rank {rank}"
                    )));
                }
                Ok(GroupElement::Free(free_concat(&[], w)))
            }
            (GroupModel::FreeProduct { h, k }, GroupElement::FreeProduct(w)) => {
                let mut out = Vec::new();
                for &l in w {
                    let f = if l.side == Side::H { h } else { k };
                    if l.elem as usize >= f.order() {
                        return Err(invalid(format!("letter {l:?} is out of range")));
                    }
                    push_letter(&mut out, l, h, k);
                }
                Ok(GroupElement::FreeProduct(out))
            }
            _ => {
                self.check(g)?;
                Ok(g.clone())
            }
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        match (self, a, b) {
            (GroupModel::Finite(f), GroupElement::Finite(x), GroupElement::Finite(y))
                if *x < f.order() && *y < f.order() =>
            {
                Ok(GroupElement::Finite(f.table().mul(*x, *y)))
            }
            (GroupModel::Abelian(g), GroupElement::Abelian(x), GroupElement::Abelian(y)) => {
                self.check(a)?;
                self.check(b)?;
                Ok(GroupElement::Abelian(g.add(x, y)))
            }
            (GroupModel::Free { .. }, GroupElement::Free(x), GroupElement::Free(y)) => {
                Ok(GroupElement::Free(free_concat(x, y)))
            }
            (
                GroupModel::FreeProduct { h, k },
                GroupElement::FreeProduct(x),
                GroupElement::FreeProduct(y),
            ) => {
                let mut out = x.clone();
                for &l in y {
                    push_letter(&mut out, l, h, k);
                }
                Ok(GroupElement::FreeProduct(out))
            }
            _ => Err(Error::ModelMismatch(format!(
                "cannot multiply {a:?} and {b:?} in {}",
                self.name()
            ))),
        }
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        match (self, a) {
            (GroupModel::Finite(f), GroupElement::Finite(x)) if *x < f.order() => {
                Ok(GroupElement::Finite(f.table().inv(*x)))
            }
            (GroupModel::Abelian(g), GroupElement::Abelian(x)) => {
                Ok(GroupElement::Abelian(g.neg(x)))
            }
            (GroupModel::Free { .. }, GroupElement::Free(w)) => {
                Ok(GroupElement::Free(w.iter().rev().map(|&l| -l).collect()))
            }
            (GroupModel::FreeProduct { h, k }, GroupElement::FreeProduct(w)) => {
                Ok(GroupElement::FreeProduct(
                    w.iter()
                        .rev()
                        .map(|l| {
                            let f = if l.side == Side::H { h } else { k };
                            Letter {
                                side: l.side,
                                elem: f.table().inv(l.elem as usize) as u32,
                            }
                        })
                        .collect(),
                ))
            }
            _ => Err(Error::ModelMismatch(format!(
                "{a:?} is not an element of {}",
                self.name()
            ))),
        }
    }

    /// Word length with respect to the model's generating set.
    pub fn word_length(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        match (self, g) {
            (GroupModel::Finite(f), GroupElement::Finite(x)) => Ok(u64::from(f.norm(*x))),
            (GroupModel::Abelian(a), GroupElement::Abelian(v)) if a.is_standard() => {
                Ok(a.standard_norm(v))
            }
            (GroupModel::Abelian(_), _) => self.bfs_length(g, &Limits::from_env()),
            (GroupModel::Free { .. }, GroupElement::Free(w)) => Ok(w.len() as u64),
            (GroupModel::FreeProduct { h, k }, GroupElement::FreeProduct(w)) => Ok(w
                .iter()
                .map(|l| {
                    u64::from(if l.side == Side::H {
                        h.norm(l.elem as usize)
                    } else {
                        k.norm(l.elem as usize)
                    })
                })
                .sum()),
            _ => unreachable!("check rejected mismatched variants"),
        }
    }

    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> Result<u64> {
        let d = self.multiply(&self.invert(a)?, b)?;
        self.word_length(&d)
    }

    /// Word length by breadth-first search from the identity.
    pub fn bfs_length(&self, g: &GroupElement, limits: &Limits) -> Result<u64> {
        let gens = self.generators();
        let mut seen = HashSet::from([self.identity()]);
        let mut layer = vec![self.identity()];
        let mut d = 0u64;
        loop {
            if layer.contains(g) {
                return Ok(d);
            }
            let mut next = Vec::new();
            for x in &layer {
                for s in &gens {
                    let y = self.multiply(x, s)?;
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if seen.len() > limits.vertex_cap {
                return Err(resource("word-length search ball", limits.vertex_cap));
            }
            if next.is_empty() {
                return Err(Error::Internal(format!(
                    "{g:?} unreachable from the identity"
                )));
            }
            layer = next;
            d += 1;
        }
    }

    /// Canonical text form: `3`, `(1,0)`, `aB`, `h3.k1`, with `e` for the
    /// identity of word models.
    pub fn format(&self, g: &GroupElement) -> String {
        match g {
            GroupElement::Finite(x) => x.to_string(),
            GroupElement::Abelian(v) => {
                let coords: Vec<String> = v
                    .free
                    .iter()
                    .map(|x| x.to_string())
                    .chain(v.torsion.iter().map(|q| q.to_string()))
                    .collect();
                if coords.len() == 1 {
                    coords[0].clone()
                } else {
                    format!("({})", coords.join(","))
                }
            }
            GroupElement::Free(w) => {
                if w.is_empty() {
                    return "e".into();
                }
                w.iter()
                    .map(|&l| {
                        let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                        if l > 0 {
                            c
                        } else {
                            c.to_ascii_uppercase()
                        }
                    })
                    .collect()
            }
            GroupElement::FreeProduct(w) => {
                if w.is_empty() {
                    return "e".into();
                }
                let mut s = String::new();
                for (i, l) in w.iter().enumerate() {
                    if i > 0 {
                        s.push('.');
                    }
                    let _ = write!(s, "{}{}", if l.side == Side::H { 'h' } else { 'k' }, l.elem);
                }
                s
            }
        }
    }

    /// Parses the canonical text form. Word inputs need not be reduced.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        let t = text.trim();
        match self {
            GroupModel::Finite(f) => {
                let x: usize = t
                    .parse()
                    .map_err(|_| invalid(format!("expected an element index, got {t:?}")))?;
                if x >= f.order() {
                    return Err(invalid(format!(
                        "element {x} out of range for order {}",
                        f.order()
                    )));
                }
                Ok(GroupElement::Finite(x))
            }
            GroupModel::Abelian(a) => {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .unwrap_or(t);
                let coords: Vec<i64> = inner
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| invalid(format!("expected integer coordinates, got {t:?}")))?;
                Ok(GroupElement::Abelian(a.element(&coords)?))
            }
            GroupModel::Free { .. } => {
                if t == "e" || t.is_empty() {
                    return Ok(self.identity());
                }
                let mut w = Vec::new();
                for c in t.chars() {
                    if !c.is_ascii_alphabetic() {
                        return Err(invalid(format!(
                            "unexpected character {c:?} in free word {t:?}"
                        )));
                    }
                    let k = (c.to_ascii_lowercase() as u8 - b'a' + 1) as i32;
                    w.push(if c.is_ascii_lowercase() { k } else { -k });
                }
                self.normalize(&GroupElement::Free(w))
            }
            GroupModel::FreeProduct { .. } => {
                if t == "e" || t.is_empty() {
                    return Ok(self.identity());
                }
                let mut w = Vec::new();
                for part in t.split('.') {
                    let part = part.trim();
                    let side = match part.chars().next() {
                        Some('h') => Side::H,
                        Some('k') => Side::K,
                        _ => {
                            return Err(invalid(format!("letter {part:?} must start with h or k")))
                        }
                    };
                    let elem: u32 = part[1..]
                        .parse()
                        .map_err(|_| invalid(format!("letter {part:?} needs an element index")))?;
                    w.push(Letter { side, elem });
                }
                self.normalize(&GroupElement::FreeProduct(w))
            }
        }
    }
}

fn free_concat(x: &[i32], y: &[i32]) -> Vec<i32> {
    let mut out = x.to_vec();
    for &l in y {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Appends one letter to an alternating word, merging at the seam.
fn push_letter(out: &mut Vec<Letter>, l: Letter, h: &FiniteGroup, k: &FiniteGroup) {
    let f = if l.side == Side::H { h } else { k };
    if l.elem as usize == f.identity() {
        return;
    }
    match out.last_mut() {
        Some(last) if last.side == l.side => {
            let m = f.table().mul(last.elem as usize, l.elem as usize);
            if m == f.identity() {
                out.pop();
            } else {
                last.elem = m as u32;
            }
        }
        _ => out.push(l),
    }
}
